#include "harsanyi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace harsanyi {

namespace {

std::string trim(const std::string& s) {
    const size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& key) {
    std::vector<T> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            if constexpr (std::is_same_v<T, int>) out.push_back(std::stoi(item));
            else out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CommandError(kExitInputError, "bad list entry '" + item + "' for key " + key);
        }
    }
    if (out.empty()) throw CommandError(kExitInputError, "empty list for key " + key);
    return out;
}

struct Field {
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T>
std::string list_to_string(const std::vector<T>& values) {
    std::ostringstream out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    return out.str();
}

uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        return std::stoull(trim(v));
    } catch (const std::exception&) {
        throw CommandError(kExitInputError, "bad integer '" + v + "' for key " + key);
    }
}

double parse_f64(const std::string& v, const std::string& key) {
    try {
        return std::stod(trim(v));
    } catch (const std::exception&) {
        throw CommandError(kExitInputError, "bad number '" + v + "' for key " + key);
    }
}

const std::map<std::string, Field>& field_table() {
    static const std::map<std::string, Field> fields = [] {
        std::map<std::string, Field> f;
        auto str = [&](const char* key, std::string RunConfig::* member) {
            f[key] = {[member](RunConfig& c, const std::string& v) { c.*member = trim(v); },
                      [member](const RunConfig& c) { return c.*member; }};
        };
        auto u64 = [&](const char* key, uint64_t RunConfig::* member) {
            f[key] = {[member, key](RunConfig& c, const std::string& v) {
                          c.*member = parse_u64(v, key);
                      },
                      [member](const RunConfig& c) { return std::to_string(c.*member); }};
        };
        auto i32 = [&](const char* key, int RunConfig::* member) {
            f[key] = {[member, key](RunConfig& c, const std::string& v) {
                          c.*member = static_cast<int>(parse_u64(v, key));
                      },
                      [member](const RunConfig& c) { return std::to_string(c.*member); }};
        };
        auto f64 = [&](const char* key, double RunConfig::* member) {
            f[key] = {[member, key](RunConfig& c, const std::string& v) {
                          c.*member = parse_f64(v, key);
                      },
                      [member](const RunConfig& c) {
                          std::ostringstream out;
                          out << (c.*member);
                          return out.str();
                      }};
        };

        str("dataset", &RunConfig::dataset);
        str("schema", &RunConfig::schema);
        str("out_dir", &RunConfig::out_dir);
        str("model", &RunConfig::model);
        str("model2", &RunConfig::model2);
        str("tables", &RunConfig::tables);
        str("tables2", &RunConfig::tables2);
        str("arch", &RunConfig::arch);
        str("category", &RunConfig::category);
        str("split", &RunConfig::split);
        str("baseline", &RunConfig::baseline);
        str("context", &RunConfig::context);

        u64("seed_split", &RunConfig::seed_split);
        u64("seed_train", &RunConfig::seed_train);
        u64("seed_train2", &RunConfig::seed_train2);
        u64("seed_corrupt", &RunConfig::seed_corrupt);
        u64("seed_sampling", &RunConfig::seed_sampling);

        i32("epochs", &RunConfig::epochs);
        i32("batch", &RunConfig::batch);
        i32("hidden", &RunConfig::hidden);
        i32("quadrature_points", &RunConfig::quadrature_points);
        i32("mc_trials", &RunConfig::mc_trials);
        i32("histogram_top", &RunConfig::histogram_top);
        i32("histogram_bins", &RunConfig::histogram_bins);
        i32("synth_max_vars", &RunConfig::synth_max_vars);
        i32("synth_trials", &RunConfig::synth_trials);

        f64("lr", &RunConfig::learning_rate);
        f64("lambda", &RunConfig::lambda);
        f64("lambda_dict", &RunConfig::lambda_dict);
        f64("lambda_discrimination", &RunConfig::lambda_discrimination);
        f64("label_noise_r", &RunConfig::label_noise_r);
        f64("input_noise_delta", &RunConfig::input_noise_delta);

        f["max_samples"] = {[](RunConfig& c, const std::string& v) {
                                c.max_samples = parse_u64(v, "max_samples");
                            },
                            [](const RunConfig& c) { return std::to_string(c.max_samples); }};
        auto boolean = [&](const char* key, bool RunConfig::* member) {
            f[key] = {[member, key](RunConfig& c, const std::string& v) {
                          const std::string t = trim(v);
                          if (t == "true" || t == "1") c.*member = true;
                          else if (t == "false" || t == "0") c.*member = false;
                          else throw CommandError(kExitInputError,
                                                  std::string(key) + " must be true/false");
                      },
                      [member](const RunConfig& c) {
                          return std::string(c.*member ? "true" : "false");
                      }};
        };
        boolean("include_empty", &RunConfig::include_empty);
        boolean("csv_tables", &RunConfig::csv_tables);
        f["k_grid"] = {[](RunConfig& c, const std::string& v) {
                           c.k_grid = parse_list<int>(v, "k_grid");
                       },
                       [](const RunConfig& c) { return list_to_string(c.k_grid); }};
        f["lambda_grid"] = {[](RunConfig& c, const std::string& v) {
                                c.lambda_grid = parse_list<double>(v, "lambda_grid");
                            },
                            [](const RunConfig& c) { return list_to_string(c.lambda_grid); }};
        f["r_grid"] = {[](RunConfig& c, const std::string& v) {
                           c.r_grid = parse_list<double>(v, "r_grid");
                       },
                       [](const RunConfig& c) { return list_to_string(c.r_grid); }};
        f["delta_grid"] = {[](RunConfig& c, const std::string& v) {
                               c.delta_grid = parse_list<double>(v, "delta_grid");
                           },
                           [](const RunConfig& c) { return list_to_string(c.delta_grid); }};
        return f;
    }();
    return fields;
}

std::filesystem::path under_output_root(const std::string& dir) {
    std::filesystem::path p(dir);
    if (p.is_relative()) {
        if (const char* root = std::getenv("HARSANYI_OUTPUT_ROOT")) {
            return std::filesystem::path(root) / p;
        }
    }
    return p;
}

}  // namespace

std::filesystem::path RunConfig::resolved_out_dir() const { return under_output_root(out_dir); }

std::filesystem::path RunConfig::resolved_model() const {
    if (model.empty()) return resolved_out_dir() / "model.bin";
    std::filesystem::path p(model);
    return p.is_relative() ? under_output_root(model) : p;
}

std::filesystem::path RunConfig::resolved_model2() const {
    if (model2.empty()) return {};
    std::filesystem::path p(model2);
    return p.is_relative() ? under_output_root(model2) : p;
}

std::filesystem::path RunConfig::resolved_tables() const {
    if (tables.empty()) return resolved_out_dir() / "tables";
    std::filesystem::path p(tables);
    return p.is_relative() ? under_output_root(tables) : p;
}

std::filesystem::path RunConfig::resolved_tables2() const {
    if (tables2.empty()) return {};
    std::filesystem::path p(tables2);
    return p.is_relative() ? under_output_root(tables2) : p;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CommandError(kExitInputError, "cannot open config file " + path.string());
    RunConfig config;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw CommandError(kExitInputError, path.string() + ":" + std::to_string(lineno) +
                                                    ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& fields = field_table();
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw CommandError(kExitInputError, path.string() + ":" + std::to_string(lineno) +
                                                    ": unknown config key '" + key + "'");
        }
        it->second.set(config, value);
    }
    return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw CommandError(kExitInputError, "override must look like key=value: " + assignment);
    }
    const std::string key = trim(assignment.substr(0, eq));
    const auto& fields = field_table();
    const auto it = fields.find(key);
    if (it == fields.end()) {
        throw CommandError(kExitInputError, "unknown config key '" + key + "'");
    }
    it->second.set(config, assignment.substr(eq + 1));
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, field] : field_table()) {
        out.emplace_back(key, field.get(config));
    }
    return out;
}

}  // namespace harsanyi
