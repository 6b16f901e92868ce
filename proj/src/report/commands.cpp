#include "harsanyi/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "harsanyi/dataset.hpp"
#include "harsanyi/lattice.hpp"
#include "harsanyi/mlp.hpp"
#include "harsanyi/report.hpp"
#include "harsanyi/value_models.hpp"

namespace harsanyi {

namespace fs = std::filesystem;

namespace {

constexpr double kResidualTolerance = 1e-9;

Split split_from_name(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "test") return Split::test;
    if (name == "all") return Split::all;
    throw CommandError(kExitInputError, "split must be train, test or all; got '" + name + "'");
}

TabularDataset prepare_dataset(const RunConfig& cfg, bool with_corruption = true) {
    if (cfg.dataset.empty()) throw CommandError(kExitInputError, "config key 'dataset' is empty");
    TabularDataset ds = load_tabular(cfg.dataset, schema_from_name(cfg.schema), cfg.seed_split);
    normalize_features(ds);
    if (with_corruption) {
        if (cfg.label_noise_r > 0.0) corrupt_labels(ds, cfg.label_noise_r, cfg.seed_corrupt);
        if (cfg.input_noise_delta > 0.0) {
            corrupt_inputs(ds, cfg.input_noise_delta, cfg.seed_corrupt + 1);
        }
    }
    return ds;
}

std::vector<size_t> selected_rows(const RunConfig& cfg, const TabularDataset& ds) {
    std::vector<size_t> ids = subcategory_filter(ds, cfg.category);
    ids = restrict_to_split(ds, ids, split_from_name(cfg.split));
    std::sort(ids.begin(), ids.end());
    if (cfg.max_samples > 0 && ids.size() > cfg.max_samples) ids.resize(cfg.max_samples);
    if (ids.empty()) {
        throw CommandError(kExitEmptySelection,
                           "selector '" + cfg.category + "' over split '" + cfg.split +
                               "' matched zero samples");
    }
    return ids;
}

std::vector<double> baseline_vector(const RunConfig& cfg, const TabularDataset& ds) {
    if (cfg.baseline == "zeros") return std::vector<double>(ds.cols, 0.0);
    if (cfg.baseline == "mean") {
        std::vector<double> train_block;
        train_block.reserve(ds.train_indices.size() * ds.cols);
        for (size_t r : ds.train_indices) {
            const auto row = ds.row(r);
            train_block.insert(train_block.end(), row.begin(), row.end());
        }
        BaselinePolicy policy = BaselinePolicy::per_variable_mean();
        policy.attach_reference(train_block, ds.train_indices.size(), ds.cols);
        return policy.resolve(ds.cols);
    }
    if (cfg.baseline.rfind("explicit:", 0) == 0) {
        std::vector<double> out;
        std::istringstream in(cfg.baseline.substr(9));
        std::string item;
        while (std::getline(in, item, ',')) out.push_back(std::stod(item));
        if (out.size() != ds.cols) {
            throw CommandError(kExitInputError, "explicit baseline needs " +
                                                    std::to_string(ds.cols) + " values");
        }
        return out;
    }
    throw CommandError(kExitInputError, "baseline must be mean, zeros or explicit:...");
}

// Designated context variables from the config, as a mask over the columns.
uint32_t context_bits(const RunConfig& cfg, size_t cols) {
    if (cfg.context.empty()) return 0;
    uint32_t bits = 0;
    std::istringstream in(cfg.context);
    std::string item;
    while (std::getline(in, item, ',')) {
        int var = 0;
        try {
            var = std::stoi(item);
        } catch (const std::exception&) {
            throw CommandError(kExitInputError, "bad context variable '" + item + "'");
        }
        if (var < 1 || static_cast<size_t>(var) > cols) {
            throw CommandError(kExitInputError, "context variable out of range: " + item);
        }
        bits |= 1u << (var - 1);
    }
    if (bits == VariableSet::full(static_cast<int>(cols)).bits) {
        throw CommandError(kExitInputError, "context cannot cover every variable");
    }
    return bits;
}

// Interaction tables for the selected rows, fanned out across worker threads.
struct Extraction {
    std::vector<InteractionTable> tables;
    std::vector<double> residuals;
    double max_residual = 0.0;
};

Extraction extract_tables(const MlpModel& model, const TabularDataset& ds,
                          std::span<const size_t> rows, std::span<const double> baseline,
                          const RunConfig& cfg) {
    Extraction out;
    const size_t count = rows.size();
    std::vector<std::optional<InteractionTable>> slots(count);
    out.residuals.assign(count, 0.0);

    const int cols = static_cast<int>(ds.cols);
    const uint32_t ctx_bits = context_bits(cfg, ds.cols);
    const ContextSpec ctx{VariableSet(ctx_bits, cols), cfg.quadrature_points};
    const VariableSet analyzed(VariableSet::full(cols).bits & ~ctx_bits, cols);
    const BaselinePolicy policy =
        BaselinePolicy::explicit_vector({baseline.begin(), baseline.end()});

    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&](size_t begin, size_t end) {
        try {
            for (size_t i = begin; i < end; ++i) {
                const size_t row = rows[i];
                const auto sample = ds.row(row);
                const int label = ds.labels[row];
                const ValueFn fn = [&model, label](std::span<const double> x) {
                    return model.log_odds(x, label);
                };
                const ValueProfile profile =
                    ctx_bits == 0
                        ? build_value_profile(fn, sample, baseline)
                        : context_averaged_profile(fn, sample, analyzed, ctx, policy);
                InteractionTable table = harsanyi_transform(profile);
                const double residual = efficiency_residual(profile, table);
                const double scale =
                    std::max(1.0, std::fabs(profile[static_cast<uint32_t>(profile.size() - 1)]));
                if (residual > kResidualTolerance * scale) {
                    throw CommandError(kExitInvariantViolation,
                                       "efficiency residual " + format_double(residual) +
                                           " above tolerance for sample " + std::to_string(row));
                }
                out.residuals[i] = residual;
                slots[i].emplace(std::move(table));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    const size_t workers = std::min<size_t>(std::thread::hardware_concurrency() > 0
                                                ? std::thread::hardware_concurrency()
                                                : 1,
                                            8);
    if (workers > 1 && count > 4) {
        std::vector<std::thread> pool;
        const size_t chunk = (count + workers - 1) / workers;
        for (size_t w = 0; w < workers; ++w) {
            const size_t begin = w * chunk;
            const size_t end = std::min(count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    } else {
        work(0, count);
    }
    if (error) std::rethrow_exception(error);

    out.tables.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        out.max_residual = std::max(out.max_residual, out.residuals[i]);
        out.tables.push_back(std::move(*slots[i]));
    }
    return out;
}

TrainOptions train_options(const RunConfig& cfg) {
    TrainOptions opt;
    opt.epochs = cfg.epochs;
    opt.batch_size = cfg.batch;
    opt.learning_rate = cfg.learning_rate;
    opt.hidden_width = cfg.hidden;
    return opt;
}

std::vector<SalientSet> salient_sets_at(std::span<const InteractionTable> tables, double lambda,
                                        bool include_empty) {
    std::vector<SalientSet> out;
    out.reserve(tables.size());
    for (const InteractionTable& t : tables) {
        out.push_back(salient_set(t, lambda, include_empty));
    }
    return out;
}

std::vector<int> sorted_unique_k_grid(const RunConfig& cfg) {
    std::vector<int> grid = cfg.k_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty() || grid.front() < 1) {
        throw CommandError(kExitInputError, "k_grid entries must be >= 1");
    }
    return grid;
}

}  // namespace

TrainOutcome cmd_train(const RunConfig& cfg) {
    const TabularDataset ds = prepare_dataset(cfg);
    TrainSummary summary;
    const MlpModel model =
        train_mlp(ds, arch_from_name(cfg.arch), train_options(cfg), cfg.seed_train, &summary);

    const fs::path model_path = cfg.resolved_model();
    if (!model_path.parent_path().empty()) fs::create_directories(model_path.parent_path());
    save_model(model, model_path);

    Json record = report_skeleton(cfg);
    record["blocks"]["training"] = {
        {"arch", arch_name(model.arch)},
        {"seed", model.training_seed},
        {"train_accuracy", summary.train_accuracy},
        {"test_accuracy", summary.test_accuracy},
        {"final_loss", summary.final_loss},
    };
    write_json_file(record, model_path.string() + ".json");

    std::printf("trained %s on %s: train accuracy %.4f, test accuracy %.4f\n",
                arch_name(model.arch), cfg.dataset.c_str(), summary.train_accuracy,
                summary.test_accuracy);
    return {model_path, summary.train_accuracy, summary.test_accuracy};
}

ExtractOutcome cmd_extract(const RunConfig& cfg) {
    const TabularDataset ds = prepare_dataset(cfg);
    const MlpModel model = load_model(cfg.resolved_model());
    if (model.input_dim != static_cast<int>(ds.cols)) {
        throw CommandError(kExitInputError, "model input dimension does not match dataset");
    }
    const std::vector<size_t> rows = selected_rows(cfg, ds);
    const std::vector<double> baseline = baseline_vector(cfg, ds);
    const Extraction extraction = extract_tables(model, ds, rows, baseline, cfg);

    const fs::path dir = cfg.resolved_tables();
    fs::create_directories(dir);
    char name[32];
    for (size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(name, sizeof(name), "table_%06zu.bin", rows[i]);
        save(extraction.tables[i], dir / name);
        if (cfg.csv_tables) {
            std::snprintf(name, sizeof(name), "table_%06zu.csv", rows[i]);
            write_lattice_csv(dir / name, extraction.tables[i].vars(),
                              extraction.tables[i].effects());
        }
    }

    Json manifest = report_skeleton(cfg);
    Json block;
    block["n"] = static_cast<int>(ds.cols);
    block["model"] = cfg.resolved_model().string();
    block["rows"] = rows;
    Json labels = Json::array();
    for (size_t r : rows) labels.push_back(ds.labels[r]);
    block["labels"] = std::move(labels);
    block["residuals"] = extraction.residuals;
    manifest["blocks"]["extraction"] = std::move(block);
    write_json_file(manifest, dir / "manifest.json");

    std::printf("extracted %zu interaction tables to %s (max residual %.3g)\n", rows.size(),
                dir.string().c_str(), extraction.max_residual);
    return {dir, rows.size(), extraction.max_residual};
}

namespace {

std::vector<InteractionTable> load_table_dir(const fs::path& dir,
                                             std::vector<std::string>* names = nullptr) {
    if (!fs::exists(dir)) {
        throw CommandError(kExitInputError, "table directory does not exist: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".bin") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw CommandError(kExitEmptySelection, "no interaction tables in " + dir.string());
    }
    std::vector<InteractionTable> tables;
    tables.reserve(files.size());
    for (const auto& f : files) {
        tables.push_back(load_table(f));
        if (names) names->push_back(f.filename().string());
        if (tables.back().vars() != tables.front().vars()) {
            throw CommandError(kExitInputError, "incompatible table dimensions in " + dir.string());
        }
    }
    return tables;
}

}  // namespace

MetricsOutcome cmd_metrics(const RunConfig& cfg) {
    std::vector<std::string> table_names;
    const std::vector<InteractionTable> tables = load_table_dir(cfg.resolved_tables(), &table_names);
    const int n = tables.front().vars();
    const size_t candidates = table_size(n) - 1;

    MetricsOutcome outcome;
    outcome.n = n;
    outcome.table_count = tables.size();

    const fs::path out_dir = cfg.resolved_out_dir();
    fs::create_directories(out_dir);
    Json report = report_skeleton(cfg);

    // Sparsity block.
    const std::vector<SalientSet> base_sets =
        salient_sets_at(tables, cfg.lambda, cfg.include_empty);
    double mean_count = 0.0;
    for (const SalientSet& s : base_sets) mean_count += static_cast<double>(s.size());
    mean_count /= static_cast<double>(base_sets.size());
    outcome.mean_salient_count = mean_count;
    outcome.strength_curve = normalized_strength_curve(tables, false);
    const std::vector<double> strength_with_empty = normalized_strength_curve(tables, true);
    {
        Json block;
        block["lambda"] = cfg.lambda;
        block["samples"] = tables.size();
        block["candidate_concepts"] = candidates;
        block["mean_salient_count"] = mean_count;
        block["mean_salient_fraction"] = mean_count / static_cast<double>(candidates);
        block["strength_curve"] = outcome.strength_curve;
        block["strength_curve_with_empty"] = strength_with_empty;
        report["blocks"]["sparsity_curve"] = std::move(block);

        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < outcome.strength_curve.size(); ++i) {
            rows.push_back({static_cast<double>(i + 1), outcome.strength_curve[i]});
        }
        write_csv_file(out_dir / "sparsity_curve.csv", {"rank", "mean_normalized_strength"}, rows);
    }

    // Dictionary / rho block at the dictionary threshold and the vanilla 0.05.
    const std::vector<int> k_grid = sorted_unique_k_grid(cfg);
    std::vector<double> dict_lambdas = {cfg.lambda_dict};
    if (cfg.lambda_dict != 0.05) dict_lambdas.push_back(0.05);
    {
        Json rho_blocks = Json::array();
        std::vector<std::vector<double>> csv_rows;
        for (double lambda : dict_lambdas) {
            const std::vector<SalientSet> sets =
                salient_sets_at(tables, lambda, cfg.include_empty);
            std::vector<double> rho;
            size_t excluded = 0;
            for (int k : k_grid) {
                const ConceptDictionary dict = build_dictionary(sets, static_cast<size_t>(k));
                rho.push_back(explanation_ratio(dict, sets, &excluded));
            }
            const ConceptDictionary top =
                build_dictionary(sets, static_cast<size_t>(k_grid.back()));
            Json entries = Json::array();
            for (size_t i = 0; i < top.entries.size(); ++i) {
                entries.push_back({{"mask", mask_to_string(top.entries[i], n)},
                                   {"frequency", top.frequency[i]}});
            }
            Json block;
            block["lambda"] = lambda;
            block["k_grid"] = k_grid;
            block["rho"] = rho;
            block["excluded_samples"] = excluded;
            block["dictionary"] = std::move(entries);
            rho_blocks.push_back(std::move(block));

            for (size_t i = 0; i < k_grid.size(); ++i) {
                csv_rows.push_back({lambda, static_cast<double>(k_grid[i]), rho[i]});
            }
            outcome.rho_curves.emplace_back(lambda, std::move(rho));
        }
        report["blocks"]["rho_curve"] = std::move(rho_blocks);
        write_csv_file(out_dir / "rho_curve.csv", {"lambda", "k", "rho"}, csv_rows);
    }

    // Cross-model gamma when a second table set is configured.
    if (!cfg.tables2.empty()) {
        std::vector<std::string> names2;
        const std::vector<InteractionTable> tables2 =
            load_table_dir(cfg.resolved_tables2(), &names2);
        if (tables2.size() != tables.size() || tables2.front().vars() != n) {
            throw CommandError(kExitInputError,
                               "second table set does not pair with the first");
        }
        if (table_names != names2) {
            throw CommandError(kExitInputError,
                               "table sets cover different samples; re-extract with one selector");
        }
        const std::vector<SalientSet> omega2 =
            salient_sets_at(tables2, cfg.lambda, cfg.include_empty);
        for (double lambda1 : cfg.lambda_grid) {
            const std::vector<SalientSet> omega1 =
                salient_sets_at(tables, lambda1, cfg.include_empty);
            double total = 0.0;
            size_t used = 0;
            for (size_t i = 0; i < omega1.size(); ++i) {
                if (omega1[i].members.empty()) continue;
                total += cross_model_transfer(omega1[i], omega2[i]);
                ++used;
            }
            outcome.gamma.lambdas.push_back(lambda1);
            outcome.gamma.gamma_mean.push_back(used > 0 ? total / static_cast<double>(used) : 0.0);
            outcome.gamma.samples_used.push_back(used);
        }
        outcome.has_gamma = true;

        double mean1 = 0.0, mean2 = 0.0;
        for (size_t i = 0; i < base_sets.size(); ++i) {
            mean1 += static_cast<double>(base_sets[i].size());
            mean2 += static_cast<double>(omega2[i].size());
        }
        mean1 /= static_cast<double>(base_sets.size());
        mean2 /= static_cast<double>(omega2.size());
        const auto clamp_size = [&](double v) {
            return std::min(std::max(size_t{1}, static_cast<size_t>(std::llround(v))),
                            candidates);
        };
        outcome.random_baseline =
            random_transfer_baseline(clamp_size(mean1), clamp_size(mean2), n, cfg.mc_trials,
                                     cfg.seed_sampling);

        Json block;
        block["lambda2"] = cfg.lambda;
        block["lambda_grid"] = outcome.gamma.lambdas;
        block["gamma_mean"] = outcome.gamma.gamma_mean;
        block["samples_used"] = outcome.gamma.samples_used;
        block["random_baseline"] = {
            {"size1", clamp_size(mean1)},
            {"size2", clamp_size(mean2)},
            {"trials", outcome.random_baseline.trials},
            {"mc_mean", outcome.random_baseline.mc_mean},
            {"mc_stderr", outcome.random_baseline.mc_stderr},
            {"analytic", outcome.random_baseline.analytic},
        };
        report["blocks"]["gamma_curve"] = std::move(block);

        std::vector<std::vector<double>> rows;
        for (size_t i = 0; i < outcome.gamma.lambdas.size(); ++i) {
            rows.push_back({outcome.gamma.lambdas[i], outcome.gamma.gamma_mean[i],
                            static_cast<double>(outcome.gamma.samples_used[i])});
        }
        write_csv_file(out_dir / "gamma_curve.csv", {"lambda1", "gamma", "samples"}, rows);
    }

    // Discrimination block.
    {
        const DiscriminationResult disc =
            discrimination_stats(tables, cfg.lambda_discrimination, cfg.include_empty);
        outcome.beta_bar = disc.beta_bar;
        Json buckets = Json::array();
        std::vector<std::vector<double>> rows;
        for (size_t b = 0; b < 5; ++b) {
            const double lo = 0.2 * static_cast<double>(b);
            const double hi = 0.2 * static_cast<double>(b + 1);
            buckets.push_back({{"alpha_low", lo},
                               {"alpha_high", hi},
                               {"mean_beta", disc.bucket_mean_beta[b]},
                               {"concepts", disc.bucket_count[b]}});
            rows.push_back({lo, hi, disc.bucket_mean_beta[b],
                            static_cast<double>(disc.bucket_count[b])});
        }
        Json block;
        block["lambda"] = disc.lambda;
        block["population"] = disc.population;
        block["concept_count"] = disc.concepts.size();
        block["beta_bar"] = disc.beta_bar;
        block["buckets"] = std::move(buckets);
        report["blocks"]["discrimination"] = std::move(block);
        write_csv_file(out_dir / "discrimination_buckets.csv",
                       {"alpha_low", "alpha_high", "mean_beta", "concepts"}, rows);
    }

    // Multi-variable strength.
    {
        size_t excluded = 0;
        outcome.kappa = multi_variable_strength(base_sets, &excluded);
        report["blocks"]["kappa"] = {
            {"lambda", cfg.lambda},
            {"value", outcome.kappa},
            {"excluded_samples", excluded},
        };
    }

    // Effect histograms for the most frequent concepts.
    {
        const ConceptDictionary top = build_dictionary(
            base_sets, static_cast<size_t>(std::max(1, cfg.histogram_top)));
        Json histograms = Json::array();
        for (uint32_t mask : top.entries) {
            const EffectHistogram h =
                effect_histogram(mask, tables, cfg.lambda, cfg.histogram_bins,
                                 cfg.include_empty);
            histograms.push_back({{"mask", mask_to_string(mask, n)},
                                  {"count", h.count},
                                  {"lo", h.lo},
                                  {"hi", h.hi},
                                  {"bins", h.bins},
                                  {"mean", h.mean},
                                  {"sign_consistency", h.sign_consistency}});
        }
        report["blocks"]["histograms"] = std::move(histograms);
    }

    const fs::path report_path = out_dir / "metrics.json";
    write_json_file(report, report_path);
    outcome.report_path = report_path;
    std::printf("metrics over %zu tables (n=%d): mean |Omega|=%.2f, beta_bar=%.4f, kappa=%.4f\n",
                tables.size(), n, outcome.mean_salient_count, outcome.beta_bar, outcome.kappa);
    return outcome;
}

namespace {

NoisePoint noise_grid_point(const RunConfig& base, bool label_mode, double level) {
    NoisePoint point;
    point.level = level;

    RunConfig cfg = base;
    cfg.label_noise_r = label_mode ? level : 0.0;
    cfg.input_noise_delta = label_mode ? 0.0 : level;

    TabularDataset ds = prepare_dataset(cfg);
    TrainSummary summary;
    MlpModel model;
    try {
        model = train_mlp(ds, arch_from_name(cfg.arch), train_options(cfg), cfg.seed_train,
                          &summary);
    } catch (const std::runtime_error&) {
        point.diverged = true;
        return point;
    }
    point.test_accuracy = summary.test_accuracy;

    const std::vector<size_t> rows = selected_rows(cfg, ds);
    const std::vector<double> baseline = baseline_vector(cfg, ds);
    const Extraction extraction = extract_tables(model, ds, rows, baseline, cfg);

    const std::vector<SalientSet> dict_sets =
        salient_sets_at(extraction.tables, cfg.lambda_dict, cfg.include_empty);
    std::vector<int> k_grid = cfg.k_grid;
    std::sort(k_grid.begin(), k_grid.end());
    const ConceptDictionary dict =
        build_dictionary(dict_sets, static_cast<size_t>(k_grid.back()));
    point.rho_at_kmax = explanation_ratio(dict, dict_sets);

    const DiscriminationResult disc =
        discrimination_stats(extraction.tables, cfg.lambda_discrimination,
                             cfg.include_empty);
    point.beta_bar = disc.beta_bar;
    return point;
}

Json sweep_to_json(const std::vector<NoisePoint>& sweep) {
    Json arr = Json::array();
    for (const NoisePoint& p : sweep) {
        arr.push_back({{"level", p.level},
                       {"diverged", p.diverged},
                       {"test_accuracy", p.test_accuracy},
                       {"beta_bar", p.beta_bar},
                       {"rho_at_kmax", p.rho_at_kmax}});
    }
    return arr;
}

std::vector<std::vector<double>> sweep_to_rows(const std::vector<NoisePoint>& sweep) {
    std::vector<std::vector<double>> rows;
    for (const NoisePoint& p : sweep) {
        rows.push_back({p.level, p.diverged ? 1.0 : 0.0, p.test_accuracy, p.beta_bar,
                        p.rho_at_kmax});
    }
    return rows;
}

}  // namespace

NoiseStudyOutcome cmd_noise_study(const RunConfig& cfg) {
    if (cfg.r_grid.empty() || cfg.delta_grid.empty()) {
        throw CommandError(kExitInputError, "noise study needs non-empty r and delta grids");
    }
    NoiseStudyOutcome outcome;
    for (double r : cfg.r_grid) {
        outcome.label_sweep.push_back(noise_grid_point(cfg, true, r));
        const NoisePoint& p = outcome.label_sweep.back();
        std::printf("label noise r=%.3f: %s beta_bar=%.4f rho(k_max)=%.4f acc=%.4f\n", r,
                    p.diverged ? "(diverged)" : "", p.beta_bar, p.rho_at_kmax, p.test_accuracy);
    }
    for (double d : cfg.delta_grid) {
        outcome.input_sweep.push_back(noise_grid_point(cfg, false, d));
        const NoisePoint& p = outcome.input_sweep.back();
        std::printf("input noise delta=%.3f: %s beta_bar=%.4f rho(k_max)=%.4f acc=%.4f\n", d,
                    p.diverged ? "(diverged)" : "", p.beta_bar, p.rho_at_kmax, p.test_accuracy);
    }

    const fs::path out_dir = cfg.resolved_out_dir();
    fs::create_directories(out_dir);
    Json report = report_skeleton(cfg);
    report["blocks"]["noise_study"] = {
        {"label_noise", sweep_to_json(outcome.label_sweep)},
        {"input_noise", sweep_to_json(outcome.input_sweep)},
    };
    const std::vector<std::string> header = {"level", "diverged", "test_accuracy", "beta_bar",
                                             "rho_at_kmax"};
    write_csv_file(out_dir / "noise_label.csv", header, sweep_to_rows(outcome.label_sweep));
    write_csv_file(out_dir / "noise_input.csv", header, sweep_to_rows(outcome.input_sweep));
    const fs::path report_path = out_dir / "noise_study.json";
    write_json_file(report, report_path);
    outcome.report_path = report_path;
    return outcome;
}

std::vector<PropertyResult> cmd_synth_check(const RunConfig& cfg) {
    const std::vector<PropertyResult> results =
        run_axiom_suite(cfg.synth_max_vars, cfg.synth_trials, cfg.seed_sampling);
    Json block = Json::array();
    for (const PropertyResult& r : results) {
        std::printf("[%s] %-30s max error %.3g\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.max_error);
        block.push_back({{"name", r.name}, {"max_error", r.max_error}, {"pass", r.pass}});
    }
    const fs::path out_dir = cfg.resolved_out_dir();
    fs::create_directories(out_dir);
    Json report = report_skeleton(cfg);
    report["blocks"]["axioms"] = std::move(block);
    write_json_file(report, out_dir / "synth_check.json");
    return results;
}

}  // namespace harsanyi
