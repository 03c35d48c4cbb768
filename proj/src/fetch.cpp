#include "vigil/fetch.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "vigil/io.hpp"
#include "vigil/panel.hpp"

namespace vigil {

namespace {

class HttplibTransport : public HttpTransport {
public:
    HttpResponse get(const std::string& url, const std::string& bearer) override {
        auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http")
            throw FetchError(FetchError::Kind::config, "endpoint must be an http:// URL: " + url);
        auto path_start = url.find('/', scheme_end + 3);
        std::string host = url.substr(scheme_end + 3,
                                      path_start == std::string::npos
                                          ? std::string::npos
                                          : path_start - scheme_end - 3);
        std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

        httplib::Client client(("http://" + host).c_str());
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        httplib::Headers headers;
        if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);
        auto res = client.Get(path.c_str(), headers);
        if (!res) throw FetchError(FetchError::Kind::network, "connection failed: " + url);
        return {res->status, res->body};
    }

    void sleep_ms(int ms) override {
        std::this_thread::sleep_for(std::chrono::milliseconds(ms));
    }
};

std::string cache_path(const std::string& cache_dir, const std::string& ticker,
                       const std::string& from, const std::string& to) {
    return cache_dir + "/ohlcv_" + ticker + "_" + from + "_" + to + ".csv";
}

}  // namespace

std::unique_ptr<HttpTransport> make_httplib_transport() {
    return std::make_unique<HttplibTransport>();
}

std::string expand_url_template(const std::string& tmpl, const std::string& ticker,
                                const std::string& from, const std::string& to) {
    std::string url = tmpl;
    auto replace_all = [&url](const std::string& key, const std::string& value) {
        size_t pos = 0;
        while ((pos = url.find(key, pos)) != std::string::npos) {
            url.replace(pos, key.size(), value);
            pos += value.size();
        }
    };
    replace_all("{ticker}", ticker);
    replace_all("{from}", from);
    replace_all("{to}", to);
    return url;
}

std::vector<Bar> parse_ohlcv_payload(const std::string& body, const std::string& ticker) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const std::exception& e) {
        throw FetchError(FetchError::Kind::payload,
                         ticker + ": malformed payload: " + e.what());
    }
    if (!j.is_object() || !j.contains("results") || !j["results"].is_array())
        throw FetchError(FetchError::Kind::payload,
                         ticker + ": payload missing 'results' array");
    std::vector<Bar> bars;
    for (const auto& row : j["results"]) {
        Bar b;
        b.ticker = ticker;
        try {
            b.date = row.at("date").get<std::string>();
            b.open = row.at("open").get<double>();
            b.high = row.at("high").get<double>();
            b.low = row.at("low").get<double>();
            b.close = row.at("close").get<double>();
            b.volume = row.at("volume").get<double>();
        } catch (const std::exception& e) {
            throw FetchError(FetchError::Kind::payload,
                             ticker + ": malformed result row: " + e.what());
        }
        bars.push_back(std::move(b));
    }
    try {
        validate_bars(bars);
    } catch (const std::exception& e) {
        throw FetchError(FetchError::Kind::quality,
                         ticker + ": quality check failed: " + e.what());
    }
    return bars;
}

std::vector<Bar> fetch_ohlcv(const std::string& ticker, const std::string& from,
                             const std::string& to, const EndpointConfig& endpoint,
                             HttpTransport& transport, const std::string& cache_dir) {
    const std::string cached = cache_path(cache_dir, ticker, from, to);
    if (std::filesystem::exists(cached)) {
        auto by_ticker = read_ohlcv_csv(cached);
        auto it = by_ticker.find(ticker);
        if (it != by_ticker.end()) return it->second;
        throw FetchError(FetchError::Kind::payload, ticker + ": cache file corrupt: " + cached);
    }

    if (endpoint.url_template.empty())
        throw FetchError(FetchError::Kind::config, ticker + ": no endpoint URL configured");
    std::string bearer;
    if (!endpoint.api_key_env.empty()) {
        const char* key = std::getenv(endpoint.api_key_env.c_str());
        if (!key || !*key)
            throw FetchError(FetchError::Kind::auth,
                             ticker + ": credential env var " + endpoint.api_key_env +
                                 " is not set");
        bearer = key;
    }

    const std::string url = expand_url_template(endpoint.url_template, ticker, from, to);
    HttpResponse res;
    int attempt = 0;
    for (;;) {
        res = transport.get(url, bearer);
        if (res.status == 429 || res.status >= 500) {
            if (attempt >= endpoint.max_retries)
                throw FetchError(FetchError::Kind::network,
                                 ticker + ": giving up after " + std::to_string(attempt + 1) +
                                     " attempts (last status " + std::to_string(res.status) +
                                     ")");
            transport.sleep_ms(endpoint.retry_backoff_ms << attempt);
            ++attempt;
            continue;
        }
        break;
    }
    if (res.status == 401 || res.status == 403)
        throw FetchError(FetchError::Kind::auth,
                         ticker + ": authentication rejected (status " +
                             std::to_string(res.status) + ")");
    if (res.status != 200)
        throw FetchError(FetchError::Kind::network,
                         ticker + ": unexpected status " + std::to_string(res.status));

    auto bars = parse_ohlcv_payload(res.body, ticker);
    write_ohlcv_csv(cached, bars);
    return bars;
}

}  // namespace vigil
