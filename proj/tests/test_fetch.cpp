#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <stdexcept>

#include <httplib.h>
#include <thread>

#include "vigil/fetch.hpp"

using namespace vigil;
namespace fs = std::filesystem;

namespace {

const char* kPayload3 = R"({"ticker": "GME", "results": [
    {"date": "2024-01-08", "open": 10.0, "high": 11.0, "low": 9.5, "close": 10.5, "volume": 1000},
    {"date": "2024-01-09", "open": 10.5, "high": 12.0, "low": 10.0, "close": 11.5, "volume": 2000},
    {"date": "2024-01-10", "open": 11.5, "high": 11.6, "low": 11.0, "close": 11.2, "volume": 1500}
]})";

// recording double: scripted responses, counts every network touch
class FakeTransport : public HttpTransport {
public:
    std::vector<HttpResponse> script;
    std::vector<std::string> urls;
    std::vector<std::string> bearers;
    std::vector<int> sleeps;

    HttpResponse get(const std::string& url, const std::string& bearer) override {
        urls.push_back(url);
        bearers.push_back(bearer);
        if (script.empty()) return {500, "unscripted"};
        HttpResponse r = script.front();
        script.erase(script.begin());
        return r;
    }
    void sleep_ms(int ms) override { sleeps.push_back(ms); }
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vigil_fetch_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

EndpointConfig endpoint() {
    EndpointConfig e;
    e.url_template = "http://data.test/v1/{ticker}?from={from}&to={to}";
    e.max_retries = 2;
    e.retry_backoff_ms = 10;
    return e;
}

}  // namespace

TEST_CASE("url template expansion") {
    CHECK(expand_url_template("http://h/{ticker}/{from}/{to}", "GME", "a", "b") ==
          "http://h/GME/a/b");
}

TEST_CASE("a fixed 3-bar payload parses to the fixture bars") {
    auto bars = parse_ohlcv_payload(kPayload3, "GME");
    REQUIRE(bars.size() == 3);
    CHECK(bars[0].date == "2024-01-08");
    CHECK(bars[0].open == 10.0);
    CHECK(bars[1].high == 12.0);
    CHECK(bars[2].close == 11.2);
    CHECK(bars[2].volume == 1500);
    CHECK(bars[0].ticker == "GME");
}

TEST_CASE("payload violating the bar relations is a quality rejection") {
    const char* bad = R"({"results": [
        {"date": "2024-01-08", "open": 10.0, "high": 9.0, "low": 9.5, "close": 10.5, "volume": 1}
    ]})";
    try {
        parse_ohlcv_payload(bad, "GME");
        FAIL("expected quality rejection");
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::quality);
        CHECK(std::string(e.what()).find("GME") != std::string::npos);
    }
}

TEST_CASE("malformed payloads carry ticker context") {
    CHECK_THROWS_WITH_AS(parse_ohlcv_payload("{94", "GME"), doctest::Contains("GME"),
                         FetchError);
    CHECK_THROWS_AS(parse_ohlcv_payload(R"({"data": []})", "GME"), FetchError);
}

TEST_CASE("fetch writes the cache and a second call makes zero network calls") {
    TempDir dir;
    FakeTransport transport;
    transport.script = {{200, kPayload3}};
    auto bars = fetch_ohlcv("GME", "2024-01-08", "2024-01-10", endpoint(), transport,
                            dir.path.string());
    CHECK(bars.size() == 3);
    CHECK(transport.urls.size() == 1);
    CHECK(transport.urls[0] == "http://data.test/v1/GME?from=2024-01-08&to=2024-01-10");

    auto cached = fetch_ohlcv("GME", "2024-01-08", "2024-01-10", endpoint(), transport,
                              dir.path.string());
    CHECK(transport.urls.size() == 1);  // no second request
    REQUIRE(cached.size() == 3);
    CHECK(cached[1].close == bars[1].close);
}

TEST_CASE("rate-limit responses are retried with backoff, then succeed") {
    TempDir dir;
    FakeTransport transport;
    transport.script = {{429, ""}, {429, ""}, {200, kPayload3}};
    auto bars = fetch_ohlcv("GME", "a", "b", endpoint(), transport, dir.path.string());
    CHECK(bars.size() == 3);
    CHECK(transport.urls.size() == 3);
    CHECK(transport.sleeps == std::vector<int>{10, 20});
}

TEST_CASE("retries are bounded and the final failure names the ticker") {
    TempDir dir;
    FakeTransport transport;
    transport.script = {{429, ""}, {429, ""}, {429, ""}, {429, ""}};
    try {
        fetch_ohlcv("GME", "a", "b", endpoint(), transport, dir.path.string());
        FAIL("expected network error");
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::network);
        CHECK(std::string(e.what()).find("GME") != std::string::npos);
    }
    CHECK(transport.urls.size() == 3);  // initial try + max_retries
}

TEST_CASE("auth failures are distinct") {
    TempDir dir;
    FakeTransport transport;
    transport.script = {{401, ""}};
    try {
        fetch_ohlcv("GME", "a", "b", endpoint(), transport, dir.path.string());
        FAIL("expected auth error");
    } catch (const FetchError& e) {
        CHECK(e.kind == FetchError::Kind::auth);
    }

    // configured credential env var that is unset is also an auth error
    EndpointConfig with_key = endpoint();
    with_key.api_key_env = "VIGIL_TEST_KEY_THAT_IS_UNSET";
    ::unsetenv("VIGIL_TEST_KEY_THAT_IS_UNSET");
    CHECK_THROWS_AS(fetch_ohlcv("GME", "a", "b", with_key, transport, dir.path.string()),
                    FetchError);

    ::setenv("VIGIL_TEST_KEY_THAT_IS_UNSET", "sekrit", 1);
    FakeTransport t2;
    t2.script = {{200, kPayload3}};
    TempDir dir2;
    auto bars = fetch_ohlcv("GME", "a", "b", with_key, t2, dir2.path.string());
    CHECK(bars.size() == 3);
    CHECK(t2.bearers[0] == "sekrit");
    ::unsetenv("VIGIL_TEST_KEY_THAT_IS_UNSET");
}

TEST_CASE("the httplib transport fetches from a live loopback server") {
    httplib::Server server;
    std::string seen_auth;
    server.Get("/v1/GME", [&](const httplib::Request& req, httplib::Response& res) {
        if (req.has_header("Authorization")) seen_auth = req.get_header_value("Authorization");
        res.set_content(kPayload3, "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    TempDir dir;
    EndpointConfig e;
    e.url_template = "http://127.0.0.1:" + std::to_string(port) + "/v1/{ticker}?from={from}&to={to}";
    e.api_key_env = "VIGIL_LOOPBACK_KEY";
    ::setenv("VIGIL_LOOPBACK_KEY", "token123", 1);
    auto transport = make_httplib_transport();
    auto bars = fetch_ohlcv("GME", "2024-01-08", "2024-01-10", e, *transport,
                            dir.path.string());
    server.stop();
    serve.join();
    ::unsetenv("VIGIL_LOOPBACK_KEY");

    REQUIRE(bars.size() == 3);
    CHECK(bars[2].close == 11.2);
    CHECK(seen_auth == "Bearer token123");
    CHECK(fs::exists(dir.path / "ohlcv_GME_2024-01-08_2024-01-10.csv"));
}
