/*
 * Copyright (c) 2026, riskmeans contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "riskmeans/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "riskmeans/serialize.hpp"

namespace riskmeans::config {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key, const std::string& value,
                            const std::string& expected) {
    fail(ErrorCode::Parse, "[" + section + "] " + key + ": invalid value '" + value + "' (expected " + expected + ")");
}

std::uint64_t parse_u64(const std::string& section, const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty()) bad_value(section, key, v, "a non-negative integer");
    return out;
}

std::size_t parse_count(const std::string& section, const std::string& key, const std::string& v, std::size_t min = 0) {
    const auto x = parse_u64(section, key, v);
    if (x < min) bad_value(section, key, v, "an integer >= " + std::to_string(min));
    return static_cast<std::size_t>(x);
}

double parse_real(const std::string& section, const std::string& key, const std::string& v) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty()) bad_value(section, key, v, "a real number");
    return out;
}

bool parse_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "off" || v == "no" || v == "0") return false;
    bad_value(section, key, v, "true or false");
}

std::optional<std::size_t> parse_auto_count(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "auto") return std::nullopt;
    return parse_count(section, key, v, 1);
}

std::vector<std::size_t> parse_list(const std::string& section, const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    std::string s = v;
    if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_count(section, key, trim(item), 1));
    if (out.empty()) bad_value(section, key, v, "a comma-separated list of counts");
    return out;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }
std::string fmt_auto(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "auto"; }

std::string fmt_list(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& v) {
    std::filesystem::path p(v);
    if (p.is_relative() && !base.empty()) p = base / p;
    return p.lexically_normal();
}

}  // namespace

const std::vector<std::pair<std::string, std::vector<std::string>>>& keys() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> k{
        {"data", {"path", "schema", "name", "subsample"}},
        {"preprocess", {"impute", "standardize"}},
        {"rfe", {"enabled", "target_k", "step", "inner_folds", "inner_k", "inner_restarts"}},
        {"scanner", {"enabled", "input_dim", "windows", "stride", "estimators", "zero_pad", "k", "restarts"}},
        {"kmeans", {"k", "k_min", "k_max", "restarts", "max_iters", "tol", "init", "threshold"}},
        {"logistic", {"lr", "epochs", "l2"}},
        {"cv", {"folds", "seed"}},
        {"output", {"dir", "emit_plot_data"}},
    };
    return k;
}

void ExperimentConfig::set(const std::string& section, const std::string& key, const std::string& value,
                           const std::filesystem::path& base_dir) {
    const std::string& s = section;
    const std::string& v = value;
    auto unknown = [&] { fail(ErrorCode::Parse, "unknown key '" + key + "' in section [" + section + "]"); };
    if (s == "data") {
        if (key == "path") {
            data_path = resolve(base_dir, v);
        } else if (key == "schema") {
            schema_path = resolve(base_dir, v);
        } else if (key == "name") {
            dataset_name = v;
        } else if (key == "subsample") {
            subsample_per_class = v == "none" ? std::nullopt : std::optional(parse_count(s, key, v, 1));
        } else {
            unknown();
        }
    } else if (s == "preprocess") {
        if (key == "impute") {
            preprocess.impute = parse_bool(s, key, v);
        } else if (key == "standardize") {
            preprocess.standardize = parse_bool(s, key, v);
        } else {
            unknown();
        }
    } else if (s == "rfe") {
        if (key == "enabled") {
            rfe.enabled = parse_bool(s, key, v);
        } else if (key == "target_k") {
            rfe.target_k = parse_auto_count(s, key, v);
        } else if (key == "step") {
            rfe.step = parse_count(s, key, v, 1);
        } else if (key == "inner_folds") {
            rfe.inner_folds = parse_count(s, key, v, 2);
        } else if (key == "inner_k") {
            rfe.inner_k = parse_count(s, key, v, 1);
        } else if (key == "inner_restarts") {
            rfe.inner_restarts = parse_count(s, key, v, 1);
        } else {
            unknown();
        }
    } else if (s == "scanner") {
        if (key == "enabled") {
            scanner.enabled = parse_bool(s, key, v);
        } else if (key == "input_dim") {
            scanner.scan.input_dim = parse_count(s, key, v, 1);
        } else if (key == "windows") {
            scanner.scan.windows = parse_list(s, key, v);
        } else if (key == "stride") {
            scanner.scan.stride = parse_count(s, key, v, 1);
        } else if (key == "estimators") {
            scanner.scan.estimators = parse_count(s, key, v, 1);
        } else if (key == "zero_pad") {
            scanner.zero_pad = parse_bool(s, key, v);
        } else if (key == "k") {
            scanner.k = parse_count(s, key, v, 1);
        } else if (key == "restarts") {
            scanner.restarts = parse_count(s, key, v, 1);
        } else {
            unknown();
        }
    } else if (s == "kmeans") {
        if (key == "k") {
            kmeans.k = parse_auto_count(s, key, v);
        } else if (key == "k_min") {
            kmeans.k_min = parse_count(s, key, v, 2);
        } else if (key == "k_max") {
            kmeans.k_max = parse_count(s, key, v, 2);
        } else if (key == "restarts") {
            kmeans.restarts = parse_count(s, key, v, 1);
        } else if (key == "max_iters") {
            kmeans.max_iters = parse_count(s, key, v, 1);
        } else if (key == "tol") {
            kmeans.tol = parse_real(s, key, v);
            if (kmeans.tol < 0) bad_value(s, key, v, "a non-negative real");
        } else if (key == "init") {
            if (v != "kmeanspp" && v != "uniform") bad_value(s, key, v, "kmeanspp or uniform");
            kmeans.init = kmeans::parse_init(v);
        } else if (key == "threshold") {
            kmeans.threshold = parse_real(s, key, v);
            if (kmeans.threshold < 0 || kmeans.threshold > 1) bad_value(s, key, v, "a real in [0, 1]");
        } else {
            unknown();
        }
    } else if (s == "logistic") {
        if (key == "lr") {
            logistic.lr = parse_real(s, key, v);
            if (logistic.lr <= 0) bad_value(s, key, v, "a positive real");
        } else if (key == "epochs") {
            logistic.epochs = parse_count(s, key, v);
        } else if (key == "l2") {
            logistic.l2 = parse_real(s, key, v);
            if (logistic.l2 < 0) bad_value(s, key, v, "a non-negative real");
        } else {
            unknown();
        }
    } else if (s == "cv") {
        if (key == "folds") {
            cv.folds = parse_count(s, key, v, 2);
        } else if (key == "seed") {
            cv.seed = parse_u64(s, key, v);
        } else {
            unknown();
        }
    } else if (s == "output") {
        if (key == "dir") {
            output_dir = resolve(base_dir, v);
        } else if (key == "emit_plot_data") {
            emit_plot_data = parse_bool(s, key, v);
        } else {
            unknown();
        }
    } else {
        fail(ErrorCode::Parse, "unknown section [" + section + "]");
    }
}

std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> ExperimentConfig::echo()
    const {
    const auto& sc = scanner.scan;
    // Output location is not part of the experiment identity and is left out.
    return {
        {"data",
         {{"path", data_path.filename().string()},
          {"schema", schema_path.filename().string()},
          {"name", dataset_name},
          {"subsample", subsample_per_class ? std::to_string(*subsample_per_class) : "none"}}},
        {"preprocess", {{"impute", fmt_bool(preprocess.impute)}, {"standardize", fmt_bool(preprocess.standardize)}}},
        {"rfe",
         {{"enabled", fmt_bool(rfe.enabled)},
          {"target_k", fmt_auto(rfe.target_k)},
          {"step", std::to_string(rfe.step)},
          {"inner_folds", std::to_string(rfe.inner_folds)},
          {"inner_k", std::to_string(rfe.inner_k)},
          {"inner_restarts", std::to_string(rfe.inner_restarts)}}},
        {"scanner",
         {{"enabled", fmt_bool(scanner.enabled)},
          {"input_dim", std::to_string(sc.input_dim)},
          {"windows", fmt_list(sc.windows)},
          {"stride", std::to_string(sc.stride)},
          {"estimators", std::to_string(sc.estimators)},
          {"zero_pad", fmt_bool(scanner.zero_pad)},
          {"k", std::to_string(scanner.k)},
          {"restarts", std::to_string(scanner.restarts)}}},
        {"kmeans",
         {{"k", fmt_auto(kmeans.k)},
          {"k_min", std::to_string(kmeans.k_min)},
          {"k_max", std::to_string(kmeans.k_max)},
          {"restarts", std::to_string(kmeans.restarts)},
          {"max_iters", std::to_string(kmeans.max_iters)},
          {"tol", serialize::format_double(kmeans.tol)},
          {"init", kmeans::to_string(kmeans.init)},
          {"threshold", serialize::format_double(kmeans.threshold)}}},
        {"logistic",
         {{"lr", serialize::format_double(logistic.lr)},
          {"epochs", std::to_string(logistic.epochs)},
          {"l2", serialize::format_double(logistic.l2)}}},
        {"cv", {{"folds", std::to_string(cv.folds)}, {"seed", std::to_string(cv.seed)}}},
    };
}

std::string ExperimentConfig::fingerprint() const {
    std::string canon;
    for (const auto& [section, kv] : echo())
        for (const auto& [k, v] : kv) canon += section + "." + k + "=" + v + "\n";
    return serialize::digest(canon);
}

ExperimentConfig parse_config(const std::string& text, const std::string& source,
                              const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', ErrorCode::Parse, where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& [name, _] : keys()) known = known || name == section;
            require(known, ErrorCode::Parse, where + "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorCode::Parse, where + "expected 'key = value'");
        require(!section.empty(), ErrorCode::Parse, where + "key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        try {
            cfg.set(section, key, value, base_dir);
        } catch (const Error& e) {
            throw Error(e.code(), where + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string(), path.parent_path());
}

}  // namespace riskmeans::config
