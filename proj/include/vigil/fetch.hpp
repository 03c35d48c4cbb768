#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vigil/types.hpp"

// Market-data client with a local CSV cache. The HTTP layer sits behind
// HttpTransport so tests can record calls without sockets. Credentials come
// from the environment only, never from config files.

namespace vigil {

struct EndpointConfig {
    std::string url_template;  // {ticker}, {from}, {to} placeholders
    std::string api_key_env;   // env var holding the credential; empty = none
    int max_retries = 3;
    int retry_backoff_ms = 250;
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    // bearer is empty when no credential is configured
    virtual HttpResponse get(const std::string& url, const std::string& bearer) = 0;
    virtual void sleep_ms(int) {}
};

// cpp-httplib backed transport for plain http:// endpoints.
std::unique_ptr<HttpTransport> make_httplib_transport();

struct FetchError : std::runtime_error {
    enum class Kind { network, payload, auth, quality, config };
    FetchError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

std::string expand_url_template(const std::string& tmpl, const std::string& ticker,
                                const std::string& from, const std::string& to);

// payload: {"ticker": ..., "results": [{"date","open","high","low","close","volume"}...]}
std::vector<Bar> parse_ohlcv_payload(const std::string& body, const std::string& ticker);

// Cache key is (ticker, from, to); a hit never touches the network. 429 and
// 5xx responses are retried with bounded backoff; 401/403 is an auth error.
// Payloads failing the bar quality checks are rejected with ticker context.
std::vector<Bar> fetch_ohlcv(const std::string& ticker, const std::string& from,
                             const std::string& to, const EndpointConfig& endpoint,
                             HttpTransport& transport, const std::string& cache_dir);

}  // namespace vigil
