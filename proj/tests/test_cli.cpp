#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using std::string;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("swimnet-cli-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    string file(const string& name) const { return (path / name).string(); }
};

string cli_path() {
    const char* p = std::getenv("SWIMNET_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SWIMNET_CLI must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code;
    string out;
    string err;
};

string slurp(const string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const TempDir& dir, const string& args) {
    const string out = dir.file("stdout.txt"), err = dir.file("stderr.txt");
    const string cmd = cli_path() + " " + args + " >" + out + " 2>" + err;
    const int rc = std::system(cmd.c_str());
    return {WEXITSTATUS(rc), slurp(out), slurp(err)};
}

void write_file(const string& path, const string& text) {
    std::ofstream os(path);
    os << text;
}

string blob_csv(int per_class) {
    std::ostringstream os;
    os << "f0,f1,label\n";
    unsigned state = 12345;
    auto rnd = [&state] {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) / double(1 << 24) - 0.5;
    };
    for (int i = 0; i < 2 * per_class; ++i) {
        const int cls = i % 2;
        os << (cls ? 4.0 : -4.0) + rnd() << "," << rnd() << "," << (cls ? "pos" : "neg") << "\n";
    }
    return os.str();
}

}  // namespace

TEST_CASE("help lists every flag with its default") {
    TempDir dir;
    auto top = run(dir, "--help");
    CHECK(top.exit_code == 0);
    for (const char* cmd :
         {"fit", "predict", "bench-barron", "bench-classify", "bench-timing", "inspect"})
        CHECK(top.out.find(cmd) != string::npos);

    auto fit = run(dir, "fit --help");
    CHECK(fit.exit_code == 0);
    for (const char* flag : {"--data", "--target-col", "--layers", "--activation", "--epsilon",
                             "--pool-mult", "--ridge", "--seed", "--out"})
        CHECK(fit.out.find(flag) != string::npos);
    CHECK(fit.out.find("500") != string::npos);    // --layers default
    CHECK(fit.out.find("tanh") != string::npos);   // --activation default
    CHECK(fit.out.find("1e-10") != string::npos);  // --ridge default

    auto barron = run(dir, "bench-barron --help");
    CHECK(barron.exit_code == 0);
    for (const char* flag : {"--dim", "--widths", "--depths", "--seeds", "--points", "--out"})
        CHECK(barron.out.find(flag) != string::npos);
}

TEST_CASE("usage errors exit 2") {
    TempDir dir;
    CHECK(run(dir, "").exit_code == 2);                       // missing subcommand
    CHECK(run(dir, "fit").exit_code == 2);                    // missing --data
    CHECK(run(dir, "fit --bogus x").exit_code == 2);          // unknown flag
    const string data = dir.file("d.csv");
    write_file(data, blob_csv(10));
    auto r = run(dir, "fit --data " + data + " --target-col label --layers 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("positive integer") != string::npos);
}

TEST_CASE("fit then predict round-trips on the training file") {
    TempDir dir;
    const string data = dir.file("train.csv");
    write_file(data, blob_csv(30));
    const string model = dir.file("m.swim");

    auto fit = run(dir, "fit --data " + data + " --target-col label --layers 16 --seed 5 --out " +
                            model);
    CHECK(fit.exit_code == 0);
    CHECK(fit.out.find("fit ok") != string::npos);
    CHECK(fit.out.find("M=60") != string::npos);
    CHECK(std::filesystem::exists(model));

    // Feature-only copy of the training file.
    std::ostringstream feats;
    feats << "f0,f1\n";
    std::istringstream in(blob_csv(30));
    string line;
    std::getline(in, line);
    while (std::getline(in, line)) feats << line.substr(0, line.rfind(',')) << "\n";
    const string fdata = dir.file("features.csv");
    write_file(fdata, feats.str());

    const string preds = dir.file("preds.csv");
    auto pr = run(dir, "predict --model " + model + " --data " + fdata + " --out " + preds);
    CHECK(pr.exit_code == 0);
    // Perfectly separated blobs: every training row classifies correctly.
    std::ifstream ps(preds);
    std::getline(ps, line);
    CHECK(line == "prediction");
    int i = 0, wrong = 0;
    while (std::getline(ps, line)) {
        if (line != (i % 2 ? "pos" : "neg")) ++wrong;
        ++i;
    }
    CHECK(i == 60);
    CHECK(wrong == 0);

    auto inspect = run(dir, "inspect --model " + model);
    CHECK(inspect.exit_code == 0);
    CHECK(inspect.out.find("input_dim 2") != string::npos);
    CHECK(inspect.out.find("labels neg pos") != string::npos);
}

TEST_CASE("regression predict reproduces the residual reported at fit time") {
    TempDir dir;
    std::ostringstream data;
    data << "x0,x1,y\n";
    std::ostringstream feats;
    feats << "x0,x1\n";
    std::vector<double> targets;
    unsigned state = 777;
    auto rnd = [&state] {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) / double(1 << 24) - 0.5;
    };
    for (int i = 0; i < 50; ++i) {
        const double a = rnd(), b = rnd();
        const double y = a * b + 0.5 * a;
        data << a << "," << b << "," << y << "\n";
        feats << a << "," << b << "\n";
        targets.push_back(y);
    }
    const string train = dir.file("train.csv"), fcsv = dir.file("feat.csv");
    write_file(train, data.str());
    write_file(fcsv, feats.str());

    const string model = dir.file("m.swim");
    auto fit = run(dir, "fit --data " + train +
                            " --target-col y --label-mode numeric --layers 12 --seed 4 --out " +
                            model);
    REQUIRE(fit.exit_code == 0);
    const auto rpos = fit.out.find("residual=");
    REQUIRE(rpos != string::npos);
    const double reported = std::stod(fit.out.substr(rpos + 9));

    const string preds = dir.file("p.csv");
    REQUIRE(run(dir, "predict --model " + model + " --data " + fcsv + " --out " + preds)
                .exit_code == 0);
    std::ifstream ps(preds);
    string line;
    std::getline(ps, line);
    REQUIRE(line == "y0");
    double sq = 0.0;
    for (double t : targets) {
        REQUIRE(std::getline(ps, line));
        const double d = std::stod(line) - t;
        sq += d * d;
    }
    CHECK(std::sqrt(sq) == doctest::Approx(reported).epsilon(1e-4));
}

TEST_CASE("predict rejects width mismatch and empty files") {
    TempDir dir;
    const string data = dir.file("train.csv");
    write_file(data, blob_csv(10));
    const string model = dir.file("m.swim");
    REQUIRE(run(dir, "fit --data " + data + " --target-col label --layers 8 --out " + model)
                .exit_code == 0);

    const string wide = dir.file("wide.csv");
    write_file(wide, "f0,f1,f2\n1,2,3\n");
    auto r = run(dir, "predict --model " + model + " --data " + wide);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("D=2") != string::npos);
    CHECK(r.err.find("D=3") != string::npos);

    const string empty = dir.file("empty.csv");
    write_file(empty, "");
    CHECK(run(dir, "predict --model " + model + " --data " + empty).exit_code == 1);
}

TEST_CASE("bench-barron writes the documented schema and is deterministic") {
    TempDir dir;
    const string out = dir.file("results.csv");
    const string args = "bench-barron --dim 2 --widths 64 --depths 1 --seeds 1 --points 200 "
                        "--out " +
                        out;
    auto r = run(dir, args);
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    string header, row1, row2, extra;
    std::getline(in, header);
    CHECK(header == "method,depth,width,seed,metric,value,fit_seconds");
    REQUIRE(std::getline(in, row1));
    REQUIRE(std::getline(in, row2));
    CHECK_FALSE(std::getline(in, extra));  // exactly 2 rows: one per method
    CHECK(row1.find("swim,1,64,1,rel_l2_error,") == 0);
    CHECK(row2.find("random_features,1,64,1,rel_l2_error,") == 0);

    const string out2 = dir.file("results2.csv");
    auto r2 = run(dir, "bench-barron --dim 2 --widths 64 --depths 1 --seeds 1 --points 200 "
                       "--out " +
                           out2);
    CHECK(r2.exit_code == 0);
    auto metric = [](const string& line) { return line.substr(0, line.rfind(',')); };
    std::ifstream in2(out2);
    string h2, r1b, r2b;
    std::getline(in2, h2);
    std::getline(in2, r1b);
    std::getline(in2, r2b);
    CHECK(metric(r1b) == metric(row1));  // identical up to the timing column
    CHECK(metric(r2b) == metric(row2));
}

TEST_CASE("bench-classify runs a small stratified study") {
    TempDir dir;
    const string data = dir.file("blobs.csv");
    write_file(data, blob_csv(30));
    const string out = dir.file("cls.csv");
    auto r = run(dir, "bench-classify --data " + data +
                          " --target-col label --folds 5 --depths 1,2 --width 16 --seed 3 "
                          "--out " +
                          out);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("depth=1 mean_accuracy=") != string::npos);
    CHECK(r.out.find("best_depth=") != string::npos);
    std::ifstream in(out);
    string header;
    std::getline(in, header);
    CHECK(header == "method,depth,width,seed,metric,value,fit_seconds");
    int rows = 0;
    string line;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 10);  // 2 depths x 5 folds
}

TEST_CASE("bench-timing refuses sizes whose fits are too fast to time") {
    TempDir dir;
    auto r = run(dir, "bench-timing --width 1 --sizes 16,32,64 --repeats 1 --out " +
                          dir.file("t.csv"));
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("10 ms") != string::npos);
}

TEST_CASE("SWIMNET_SEED provides the seed when --seed is absent") {
    TempDir dir;
    const string data = dir.file("train.csv");
    write_file(data, blob_csv(10));
    const string m1 = dir.file("m1.swim"), m2 = dir.file("m2.swim"), m3 = dir.file("m3.swim");
    const string base = " fit --data " + data + " --target-col label --layers 8 --out ";
    CHECK(std::system((string("SWIMNET_SEED=11 ") + cli_path() + base + m1 + " >/dev/null 2>&1")
                          .c_str()) == 0);
    CHECK(std::system((string("SWIMNET_SEED=11 ") + cli_path() + base + m2 + " >/dev/null 2>&1")
                          .c_str()) == 0);
    CHECK(std::system((string("SWIMNET_SEED=12 ") + cli_path() + base + m3 + " >/dev/null 2>&1")
                          .c_str()) == 0);
    auto body = [](const string& p) {
        string s = slurp(p);
        return s.substr(s.find("hidden_layers"));  // skip header lines that echo nothing random
    };
    CHECK(body(m1) == body(m2));
    CHECK(body(m1) != body(m3));
}
