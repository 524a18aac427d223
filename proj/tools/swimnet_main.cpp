// Command-line front end: fit/predict plus the benchmark runners.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "swim/baseline.hpp"
#include "swim/benchmark.hpp"
#include "swim/dataio.hpp"
#include "swim/sampler.hpp"

namespace {

using namespace swim;

// Flag validation problems: exit 2, unlike runtime failures which exit 1.
struct UsageError : Error {
    using Error::Error;
};

std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
    std::vector<std::size_t> out;
    std::string cur;
    auto push = [&] {
        if (cur.empty()) throw UsageError(std::string(flag) + ": empty entry in '" + text + "'");
        char* end = nullptr;
        const long long v = std::strtoll(cur.c_str(), &end, 10);
        if (end != cur.c_str() + cur.size() || v <= 0)
            throw UsageError(std::string(flag) + ": '" + cur + "' is not a positive integer");
        out.push_back(static_cast<std::size_t>(v));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',') push();
        else if (ch != ' ') cur += ch;
    }
    push();
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (std::size_t v : parse_size_list(text, "--seeds")) out.push_back(v);
    return out;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
    if (opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("SWIMNET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*env == '\0' || *end != '\0')
            throw UsageError("SWIMNET_SEED: '" + std::string(env) + "' is not an integer");
        return v;
    }
    return flag_value;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct FitFlags {
    std::string data, target_col, out = "model.swim";
    std::string layers = "500", activation = "tanh", label_mode = "categorical";
    std::string y_norm = "linf", x_norm = "l2";
    double epsilon = 1e-6, ridge = 1e-10;
    std::size_t pool_mult = 1;
    std::uint64_t seed = 0;
    bool impute = false, no_header = false;
    CLI::Option* seed_opt = nullptr;
};

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
    cmd->add_option("--data", f.data, "training CSV")->required();
    cmd->add_option("--target-col", f.target_col, "target column (name or 0-based index)")
        ->required();
    cmd->add_option("--layers", f.layers, "hidden widths, comma separated")
        ->capture_default_str();
    cmd->add_option("--activation", f.activation, "relu|tanh|sine")->capture_default_str();
    cmd->add_option("--label-mode", f.label_mode, "categorical|numeric targets")
        ->capture_default_str();
    cmd->add_option("--epsilon", f.epsilon, "pair density distance floor (layers > 1)")
        ->capture_default_str();
    cmd->add_option("--pool-mult", f.pool_mult, "candidate pool multiplier")
        ->capture_default_str();
    cmd->add_option("--ridge", f.ridge, "output-layer L2 regularization")->capture_default_str();
    f.seed_opt = cmd->add_option("--seed", f.seed, "RNG seed (falls back to SWIMNET_SEED)")
                     ->capture_default_str();
    cmd->add_option("--y-norm", f.y_norm, "target-difference norm: linf|l2")
        ->capture_default_str();
    cmd->add_option("--x-norm", f.x_norm, "representation-distance norm: l2|linf")
        ->capture_default_str();
    cmd->add_flag("--impute-median", f.impute, "fill empty feature cells with column medians");
    cmd->add_flag("--no-header", f.no_header, "CSV has no header row");
    cmd->add_option("--out", f.out, "model file to write")->capture_default_str();
}

FitConfig make_fit_config(const FitFlags& f) {
    FitConfig cfg;
    cfg.layer_widths = parse_size_list(f.layers, "--layers");
    try {
        cfg.activation = Activation::parse(f.activation);
        cfg.y_norm = parse_norm(f.y_norm);
        cfg.x_norm = parse_norm(f.x_norm);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (!(f.epsilon > 0.0)) throw UsageError("--epsilon must be > 0");
    if (f.ridge < 0.0) throw UsageError("--ridge must be >= 0");
    if (f.pool_mult < 1) throw UsageError("--pool-mult must be >= 1");
    cfg.epsilon = f.epsilon;
    cfg.ridge_lambda = f.ridge;
    cfg.pool_multiplier = f.pool_mult;
    cfg.seed = resolve_seed(f.seed_opt, f.seed);
    return cfg;
}

int cmd_fit(const FitFlags& f) {
    FitConfig cfg = make_fit_config(f);
    CsvSchema schema;
    schema.has_header = !f.no_header;
    schema.target_columns = {f.target_col};
    schema.label_mode = f.label_mode == "numeric" ? LabelMode::Numeric : LabelMode::Categorical;
    if (f.label_mode != "numeric" && f.label_mode != "categorical")
        throw UsageError("--label-mode must be categorical or numeric");
    schema.impute_median = f.impute;

    Dataset ds = load_csv(f.data, schema);
    const double t0 = now_seconds();
    SampledNetwork net = fit(ds.x, ds.y, cfg);
    const double secs = now_seconds() - t0;
    net.meta.class_labels = ds.label_names;
    save_model(net, f.out);

    std::printf("fit ok M=%zu D=%zu K=%zu layers=%s residual=%.6g seconds=%.3f out=%s\n",
                ds.x.rows(), ds.x.cols(), ds.y.cols(), f.layers.c_str(),
                net.meta.train_residual_norm, secs, f.out.c_str());
    return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path, bool no_header) {
    SampledNetwork net = load_model(model_path);
    Matrix x = load_feature_csv(data_path, !no_header);
    if (x.rows() == 0) throw Error("predict: '" + data_path + "' has no data rows");
    if (x.cols() != net.input_dim) {
        throw Error("predict: feature width mismatch: model expects D=" +
                    std::to_string(net.input_dim) + ", file has D=" + std::to_string(x.cols()));
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (out_path != "-") {
        file.open(out_path);
        if (!file) throw Error("predict: cannot write '" + out_path + "'");
        os = &file;
    }

    if (!net.meta.class_labels.empty()) {
        const auto cls = predict_classes(net, x);
        *os << "prediction\n";
        for (std::size_t c : cls) *os << net.meta.class_labels[c] << '\n';
    } else {
        const Matrix out = forward(net, x);
        for (std::size_t j = 0; j < out.cols(); ++j) *os << (j ? ",y" : "y") << j;
        *os << '\n';
        char buf[32];
        for (std::size_t i = 0; i < out.rows(); ++i) {
            for (std::size_t j = 0; j < out.cols(); ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", out(i, j));
                *os << (j ? "," : "") << buf;
            }
            *os << '\n';
        }
    }
    std::fprintf(stderr, "predicted %zu rows\n", x.rows());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swimnet: pair-sampled neural networks, random-feature baseline and "
                 "benchmark runners"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "kernel threads (0 = all logical cores; timing runs use 1)")
        ->capture_default_str();

    // fit
    FitFlags fit_flags;
    CLI::App* fit_cmd = app.add_subcommand("fit", "construct a network from a CSV and save it");
    add_fit_flags(fit_cmd, fit_flags);

    // predict
    std::string p_model, p_data, p_out = "-";
    bool p_no_header = false;
    CLI::App* predict_cmd = app.add_subcommand("predict", "apply a saved model to a feature CSV");
    predict_cmd->add_option("--model", p_model, "model file")->required();
    predict_cmd->add_option("--data", p_data, "feature CSV (no target column)")->required();
    predict_cmd->add_option("--out", p_out, "output file ('-' = stdout)")->capture_default_str();
    predict_cmd->add_flag("--no-header", p_no_header, "CSV has no header row");

    // bench-barron
    struct {
        std::size_t dim = 5, points = 10000, test_points = 0;
        std::string widths = "64,256,1024", depths = "1", seeds = "1,2,3";
        std::string activation = "sine", out = "results.csv";
        double ridge = 1e-10, epsilon = 1e-6;
    } bb;
    CLI::App* barron_cmd =
        app.add_subcommand("bench-barron", "width/depth error study on the closed-form target");
    barron_cmd->add_option("--dim", bb.dim, "input dimension")->capture_default_str();
    barron_cmd->add_option("--points", bb.points, "train points (test count matches unless set)")
        ->capture_default_str();
    barron_cmd->add_option("--test-points", bb.test_points, "test points (0 = same as --points)")
        ->capture_default_str();
    barron_cmd->add_option("--widths", bb.widths, "hidden widths, comma separated")
        ->capture_default_str();
    barron_cmd->add_option("--depths", bb.depths, "hidden depths, comma separated")
        ->capture_default_str();
    barron_cmd->add_option("--seeds", bb.seeds, "seeds, comma separated")->capture_default_str();
    barron_cmd->add_option("--activation", bb.activation, "relu|tanh|sine")
        ->capture_default_str();
    barron_cmd->add_option("--ridge", bb.ridge, "output-layer L2 regularization")
        ->capture_default_str();
    barron_cmd->add_option("--epsilon", bb.epsilon, "pair density distance floor")
        ->capture_default_str();
    barron_cmd->add_option("--out", bb.out, "results CSV")->capture_default_str();

    // bench-classify
    struct {
        std::string data, target_col, depths = "1,2,3,4,5", activation = "tanh";
        std::string out = "results.csv";
        std::size_t folds = 10, width = 500, max_rows = 5000;
        double ridge = 1e-5, epsilon = 1e-6;
        std::uint64_t seed = 0;
        bool impute = false, no_header = false;
        CLI::Option* seed_opt = nullptr;
    } bc;
    CLI::App* classify_cmd =
        app.add_subcommand("bench-classify", "stratified k-fold accuracy over a depth grid");
    classify_cmd->add_option("--data", bc.data, "labelled CSV")->required();
    classify_cmd->add_option("--target-col", bc.target_col, "label column (name or index)")
        ->required();
    classify_cmd->add_option("--folds", bc.folds, "cross-validation folds")->capture_default_str();
    classify_cmd->add_option("--depths", bc.depths, "depth grid, comma separated")
        ->capture_default_str();
    classify_cmd->add_option("--width", bc.width, "neurons per hidden layer")
        ->capture_default_str();
    classify_cmd->add_option("--activation", bc.activation, "relu|tanh|sine")
        ->capture_default_str();
    classify_cmd->add_option("--ridge", bc.ridge, "output-layer L2 regularization")
        ->capture_default_str();
    classify_cmd->add_option("--epsilon", bc.epsilon, "pair density distance floor")
        ->capture_default_str();
    classify_cmd->add_option("--max-rows", bc.max_rows, "row cap after seeded shuffle (0 = none)")
        ->capture_default_str();
    bc.seed_opt = classify_cmd->add_option("--seed", bc.seed, "RNG seed (SWIMNET_SEED fallback)")
                      ->capture_default_str();
    classify_cmd->add_flag("--impute-median", bc.impute, "median-impute empty feature cells");
    classify_cmd->add_flag("--no-header", bc.no_header, "CSV has no header row");
    classify_cmd->add_option("--out", bc.out, "results CSV")->capture_default_str();

    // bench-timing
    struct {
        std::size_t width = 500, repeats = 3, dim = 5;
        std::string sizes = "5000,10000,20000,40000", activation = "relu";
        std::string out = "results.csv";
        double ridge = 1e-10;
        std::uint64_t seed = 0;
        CLI::Option* seed_opt = nullptr;
    } bt;
    CLI::App* timing_cmd = app.add_subcommand(
        "bench-timing", "fit-time scaling against training-set size (single-threaded)");
    timing_cmd->add_option("--width", bt.width, "hidden width of the fixed architecture")
        ->capture_default_str();
    timing_cmd->add_option("--sizes", bt.sizes, "training-set sizes, comma separated")
        ->capture_default_str();
    timing_cmd->add_option("--repeats", bt.repeats, "timed repeats per size (median reported)")
        ->capture_default_str();
    timing_cmd->add_option("--dim", bt.dim, "input dimension of the synthetic data")
        ->capture_default_str();
    timing_cmd->add_option("--activation", bt.activation, "relu|tanh|sine")
        ->capture_default_str();
    timing_cmd->add_option("--ridge", bt.ridge, "output-layer L2 regularization")
        ->capture_default_str();
    bt.seed_opt = timing_cmd->add_option("--seed", bt.seed, "RNG seed (SWIMNET_SEED fallback)")
                      ->capture_default_str();
    timing_cmd->add_option("--out", bt.out, "results CSV")->capture_default_str();

    // inspect
    std::string i_model;
    CLI::App* inspect_cmd = app.add_subcommand("inspect", "print a model file summary");
    inspect_cmd->add_option("--model", i_model, "model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        kernels::set_threads(jobs);
        if (fit_cmd->parsed()) return cmd_fit(fit_flags);
        if (predict_cmd->parsed()) return cmd_predict(p_model, p_data, p_out, p_no_header);

        if (barron_cmd->parsed()) {
            BarronSpec spec;
            spec.dim = bb.dim;
            spec.train_points = bb.points;
            spec.test_points = bb.test_points ? bb.test_points : bb.points;
            spec.widths = parse_size_list(bb.widths, "--widths");
            spec.depths = parse_size_list(bb.depths, "--depths");
            spec.seeds = parse_seed_list(bb.seeds);
            try {
                spec.activation = Activation::parse(bb.activation);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            spec.ridge_lambda = bb.ridge;
            spec.epsilon = bb.epsilon;
            const auto rows = run_barron(spec);
            write_results_csv(bb.out, rows);
            for (const auto& r : rows) {
                std::fprintf(stderr, "%s depth=%zu width=%zu seed=%llu %s=%.6g fit=%.2fs%s\n",
                             r.method.c_str(), r.depth, r.width,
                             static_cast<unsigned long long>(r.seed), r.metric.c_str(), r.value,
                             r.fit_seconds, r.failed ? (" FAILED: " + r.error).c_str() : "");
            }
            std::printf("wrote %s (%zu rows)\n", bb.out.c_str(), rows.size());
            return 0;
        }

        if (classify_cmd->parsed()) {
            CsvSchema schema;
            schema.has_header = !bc.no_header;
            schema.target_columns = {bc.target_col};
            schema.label_mode = LabelMode::Categorical;
            schema.impute_median = bc.impute;
            Dataset ds = load_csv(bc.data, schema);

            ClassificationSpec spec;
            spec.folds = bc.folds;
            spec.depths = parse_size_list(bc.depths, "--depths");
            spec.width = bc.width;
            try {
                spec.activation = Activation::parse(bc.activation);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            spec.ridge_lambda = bc.ridge;
            spec.epsilon = bc.epsilon;
            spec.seed = resolve_seed(bc.seed_opt, bc.seed);
            spec.max_rows = bc.max_rows;
            const auto result = run_classification(ds.x, ds.y, ds.labels, spec, ds.label_names);
            write_results_csv(bc.out, result.rows);
            for (std::size_t di = 0; di < spec.depths.size(); ++di)
                std::printf("depth=%zu mean_accuracy=%.4f\n", spec.depths[di],
                            result.mean_accuracy[di]);
            std::printf("best_depth=%zu wrote %s (%zu rows)\n", result.best_depth,
                        bc.out.c_str(), result.rows.size());
            return 0;
        }

        if (timing_cmd->parsed()) {
            kernels::set_threads(1);  // timing rows run exclusively
            TimingSpec spec;
            spec.layer_widths = {bt.width};
            spec.train_sizes = parse_size_list(bt.sizes, "--sizes");
            spec.repeats = bt.repeats;
            spec.dim = bt.dim;
            try {
                spec.activation = Activation::parse(bt.activation);
            } catch (const Error& e) {
                throw UsageError(e.what());
            }
            spec.ridge_lambda = bt.ridge;
            spec.seed = resolve_seed(bt.seed_opt, bt.seed);
            const TimingReport report = timing_scaling(spec);
            write_results_csv(bt.out, report.rows);
            for (std::size_t i = 0; i < report.train_sizes.size(); ++i)
                std::printf("M=%zu median_seconds=%.4f\n", report.train_sizes[i],
                            report.median_seconds[i]);
            std::printf("loglog_slope=%.3f\n", report.loglog_slope);
            for (std::size_t i = 0; i < report.doubling_ratios.size(); ++i)
                std::printf("ratio_%zu=%.3f\n", i, report.doubling_ratios[i]);
            std::printf("wrote %s (%zu rows)\n", bt.out.c_str(), report.rows.size());
            return 0;
        }

        if (inspect_cmd->parsed()) {
            SampledNetwork net = load_model(i_model);
            std::printf("model %s\n", i_model.c_str());
            std::printf("activation %s (s1=%.12g s2=%.12g)\n", net.activation.name(),
                        net.activation.s1, net.activation.s2);
            std::printf("input_dim %zu\n", net.input_dim);
            std::printf("hidden");
            for (const auto& l : net.hidden) std::printf(" %zu", l.weights.rows());
            std::printf("\noutput_dim %zu\n", net.output_dim());
            std::printf("seed %llu\n", static_cast<unsigned long long>(net.meta.seed));
            std::printf("train_residual %.6g\n", net.meta.train_residual_norm);
            std::printf("config %s\n", net.meta.config_echo.c_str());
            if (!net.meta.class_labels.empty()) {
                std::printf("labels");
                for (const auto& l : net.meta.class_labels) std::printf(" %s", l.c_str());
                std::printf("\n");
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
