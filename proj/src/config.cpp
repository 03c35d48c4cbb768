#include "vigil/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vigil/panel.hpp"
#include "vigil/scoring.hpp"

namespace vigil {

using nlohmann::ordered_json;

std::map<std::string, double> RunConfig::source_weights() const {
    std::map<std::string, double> w;
    for (const auto& s : sources) w[s.name] = s.weight;
    return w;
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.sources = {
        {"reddit", 1.0, "sum_aggregate"},    {"stocktwits", 1.0, "sum_aggregate"},
        {"wikipedia", 1.0, "forward_fill"},  {"news", 1.0, "sum_aggregate"},
        {"trends", 1.0, "forward_fill"},
    };
    return cfg;
}

namespace {

double json_to_double(const ordered_json& v, const std::string& key) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "inf" || s == "Inf") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("config field '" + key + "': expected number, got '" + s + "'");
    }
    if (!v.is_number())
        throw std::invalid_argument("config field '" + key + "': expected number");
    return v.get<double>();
}

int json_to_int(const ordered_json& v, const std::string& key) {
    if (!v.is_number_integer())
        throw std::invalid_argument("config field '" + key + "': expected integer");
    return v.get<int>();
}

bool json_to_bool(const ordered_json& v, const std::string& key) {
    if (!v.is_boolean())
        throw std::invalid_argument("config field '" + key + "': expected boolean");
    return v.get<bool>();
}

std::string json_to_string(const ordered_json& v, const std::string& key) {
    if (!v.is_string())
        throw std::invalid_argument("config field '" + key + "': expected string");
    return v.get<std::string>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");

    RunConfig cfg = default_config();
    static const std::set<std::string> known = {
        "tickers", "date_from", "date_to", "baseline_window", "vol_lookback", "eps",
        "thr_high", "thr_low", "min_window_len", "gap_tolerance", "alpha_r", "alpha_sigma",
        "alpha_attention", "omega", "scale_mode", "clamp_attention_z", "clamp_phi4",
        "delta_recur", "tau_recur", "sources", "normalization_mode", "ewma_lambda",
        "vol_include_current", "exclude_warmup", "artifact_z_cap", "baseline_estimator",
        "ohlcv_path", "attention_dir", "out_dir", "cache_dir", "endpoint_url",
        "api_key_env", "max_retries", "retry_backoff_ms"};

    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw std::invalid_argument("unknown config key: '" + key + "'");
        if (key == "tickers") {
            cfg.tickers.clear();
            for (const auto& t : value) cfg.tickers.push_back(json_to_string(t, key));
        } else if (key == "date_from") cfg.date_from = json_to_string(value, key);
        else if (key == "date_to") cfg.date_to = json_to_string(value, key);
        else if (key == "baseline_window") cfg.baseline_window = json_to_int(value, key);
        else if (key == "vol_lookback") cfg.vol_lookback = json_to_int(value, key);
        else if (key == "eps") cfg.eps = json_to_double(value, key);
        else if (key == "thr_high") cfg.thr_high = json_to_double(value, key);
        else if (key == "thr_low") cfg.thr_low = json_to_double(value, key);
        else if (key == "min_window_len") cfg.min_window_len = json_to_int(value, key);
        else if (key == "gap_tolerance") cfg.gap_tolerance = json_to_int(value, key);
        else if (key == "alpha_r") cfg.alpha_r = json_to_double(value, key);
        else if (key == "alpha_sigma") cfg.alpha_sigma = json_to_double(value, key);
        else if (key == "alpha_attention") cfg.alpha_attention = json_to_double(value, key);
        else if (key == "omega") {
            if (!value.is_array() || value.size() != 6)
                throw std::invalid_argument("config field 'omega': expected array of 6 numbers");
            for (size_t k = 0; k < 6; ++k) cfg.omega[k] = json_to_double(value[k], key);
        } else if (key == "scale_mode") cfg.scale_mode = json_to_string(value, key);
        else if (key == "clamp_attention_z") cfg.clamp_attention_z = json_to_bool(value, key);
        else if (key == "clamp_phi4") cfg.clamp_phi4 = json_to_bool(value, key);
        else if (key == "delta_recur") cfg.delta_recur = json_to_int(value, key);
        else if (key == "tau_recur") cfg.tau_recur = json_to_double(value, key);
        else if (key == "sources") {
            if (!value.is_array()) throw std::invalid_argument("config field 'sources': expected array");
            cfg.sources.clear();
            for (const auto& s : value) {
                SourceConfig sc;
                if (s.is_string()) {
                    sc.name = s.get<std::string>();
                } else if (s.is_object()) {
                    for (const auto& [sk, sv] : s.items()) {
                        if (sk == "name") sc.name = json_to_string(sv, "sources.name");
                        else if (sk == "weight") sc.weight = json_to_double(sv, "sources.weight");
                        else if (sk == "resample") sc.resample = json_to_string(sv, "sources.resample");
                        else throw std::invalid_argument("unknown config key: 'sources." + sk + "'");
                    }
                } else {
                    throw std::invalid_argument("config field 'sources': expected strings or objects");
                }
                cfg.sources.push_back(std::move(sc));
            }
        } else if (key == "normalization_mode") cfg.normalization_mode = json_to_string(value, key);
        else if (key == "ewma_lambda") cfg.ewma_lambda = json_to_double(value, key);
        else if (key == "vol_include_current") cfg.vol_include_current = json_to_bool(value, key);
        else if (key == "exclude_warmup") cfg.exclude_warmup = json_to_bool(value, key);
        else if (key == "artifact_z_cap") cfg.artifact_z_cap = json_to_double(value, key);
        else if (key == "baseline_estimator") cfg.baseline_estimator = json_to_string(value, key);
        else if (key == "ohlcv_path") cfg.ohlcv_path = json_to_string(value, key);
        else if (key == "attention_dir") cfg.attention_dir = json_to_string(value, key);
        else if (key == "out_dir") cfg.out_dir = json_to_string(value, key);
        else if (key == "cache_dir") cfg.cache_dir = json_to_string(value, key);
        else if (key == "endpoint_url") cfg.endpoint_url = json_to_string(value, key);
        else if (key == "api_key_env") cfg.api_key_env = json_to_string(value, key);
        else if (key == "max_retries") cfg.max_retries = json_to_int(value, key);
        else if (key == "retry_backoff_ms") cfg.retry_backoff_ms = json_to_int(value, key);
    }

    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (cfg.thr_high < cfg.thr_low)
        fail("thr_high (" + std::to_string(cfg.thr_high) + ") must be >= thr_low (" +
             std::to_string(cfg.thr_low) + ")");
    if (cfg.baseline_window < 2) fail("baseline_window must be >= 2");
    if (cfg.vol_lookback < 1) fail("vol_lookback must be >= 1");
    if (!(cfg.eps > 0)) fail("eps must be positive");
    if (cfg.min_window_len < 1) fail("min_window_len must be >= 1");
    if (cfg.gap_tolerance < 0) fail("gap_tolerance must be >= 0");
    if (cfg.delta_recur < 0) fail("delta_recur must be >= 0");
    if (cfg.alpha_r < 0 || cfg.alpha_sigma < 0 || cfg.alpha_attention < 0)
        fail("alpha weights must be non-negative");
    if (cfg.alpha_r + cfg.alpha_sigma + cfg.alpha_attention <= 0)
        fail("at least one alpha weight must be positive");
    for (double w : cfg.omega) {
        if (!std::isfinite(w)) fail("omega weights must be finite");
    }
    if (!(cfg.ewma_lambda > 0 && cfg.ewma_lambda < 1)) fail("ewma_lambda must be in (0, 1)");
    if (!(cfg.artifact_z_cap > 0)) fail("artifact_z_cap must be positive");
    if (cfg.baseline_estimator != "mean_std")
        fail("baseline_estimator '" + cfg.baseline_estimator + "' not implemented (only mean_std)");
    scale_mode_from_string(cfg.scale_mode);
    normalization_mode_from_string(cfg.normalization_mode);
    if (cfg.sources.empty()) fail("at least one attention source required");
    double wsum = 0;
    std::set<std::string> names;
    for (const auto& s : cfg.sources) {
        if (s.name.empty()) fail("source name must be non-empty");
        if (!names.insert(s.name).second) fail("duplicate source '" + s.name + "'");
        if (!(s.weight >= 0) || !std::isfinite(s.weight))
            fail("source '" + s.name + "' weight must be finite and non-negative");
        resample_mode_from_string(s.resample);
        wsum += s.weight;
    }
    if (wsum <= 0) fail("source weights must sum to a positive value");
    if (cfg.max_retries < 0) fail("max_retries must be >= 0");
    if (cfg.retry_backoff_ms < 0) fail("retry_backoff_ms must be >= 0");
}

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["tickers"] = cfg.tickers;
    j["date_from"] = cfg.date_from;
    j["date_to"] = cfg.date_to;
    j["baseline_window"] = cfg.baseline_window;
    j["vol_lookback"] = cfg.vol_lookback;
    j["eps"] = cfg.eps;
    j["thr_high"] = cfg.thr_high;
    j["thr_low"] = cfg.thr_low;
    j["min_window_len"] = cfg.min_window_len;
    j["gap_tolerance"] = cfg.gap_tolerance;
    j["alpha_r"] = cfg.alpha_r;
    j["alpha_sigma"] = cfg.alpha_sigma;
    j["alpha_attention"] = cfg.alpha_attention;
    j["omega"] = cfg.omega;
    j["scale_mode"] = cfg.scale_mode;
    j["clamp_attention_z"] = cfg.clamp_attention_z;
    j["clamp_phi4"] = cfg.clamp_phi4;
    j["delta_recur"] = cfg.delta_recur;
    if (std::isinf(cfg.tau_recur)) j["tau_recur"] = "inf";
    else j["tau_recur"] = cfg.tau_recur;
    ordered_json sources = ordered_json::array();
    for (const auto& s : cfg.sources) {
        sources.push_back({{"name", s.name}, {"weight", s.weight}, {"resample", s.resample}});
    }
    j["sources"] = sources;
    j["normalization_mode"] = cfg.normalization_mode;
    j["ewma_lambda"] = cfg.ewma_lambda;
    j["vol_include_current"] = cfg.vol_include_current;
    j["exclude_warmup"] = cfg.exclude_warmup;
    j["artifact_z_cap"] = cfg.artifact_z_cap;
    j["baseline_estimator"] = cfg.baseline_estimator;
    j["ohlcv_path"] = cfg.ohlcv_path;
    j["attention_dir"] = cfg.attention_dir;
    j["out_dir"] = cfg.out_dir;
    j["cache_dir"] = cfg.cache_dir;
    j["endpoint_url"] = cfg.endpoint_url;
    j["api_key_env"] = cfg.api_key_env;
    j["max_retries"] = cfg.max_retries;
    j["retry_backoff_ms"] = cfg.retry_backoff_ms;
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(config_to_json(cfg)); }

}  // namespace vigil
