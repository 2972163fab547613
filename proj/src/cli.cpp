#include "odt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "odt/baseline.hpp"
#include "odt/csv.hpp"
#include "odt/solver.hpp"
#include "odt/tree.hpp"

namespace odt::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

struct CommonSolveFlags {
    int depth = -1;
    double max_gap = 0.0;
    std::string label;
    std::optional<double> time_limit;
    std::uint64_t seed = 0;
    double epsilon = kDefaultEpsilon;
};

struct TrainArgs {
    std::string input;
    std::string out;
    std::string stats_json;
    CommonSolveFlags common;
    bool disable_nb = false, disable_is = false, disable_sp = false, disable_d2 = false, disable_cache = false;
};

struct EvaluateArgs {
    std::string tree;
    std::string input;
    std::string label;
    double epsilon = kDefaultEpsilon;
};

struct BenchArgs {
    std::string input;
    std::string out;
    std::string trace;
    CommonSolveFlags common;
};

void add_common(CLI::App* app, CommonSolveFlags& c) {
    app->add_option("--depth", c.depth, "Maximum number of branching levels")->required()->check(CLI::NonNegativeNumber);
    app->add_option("--max-gap", c.max_gap,
                    "Permitted distance from optimal: <1 is a fraction of the rows, >=1 an absolute count")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--label", c.label, "Label column: header name or 0-based index (default: last column)");
    app->add_option("--time-limit", c.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "Reserved; the search is deterministic");
    app->add_option("--epsilon", c.epsilon, "Feature values closer than this are treated as equal")
        ->check(CLI::NonNegativeNumber);
}

SolverConfig make_config(const CommonSolveFlags& c) {
    SolverConfig cfg;
    cfg.max_depth = c.depth;
    cfg.max_gap = c.max_gap;
    cfg.time_limit_seconds = c.time_limit;
    return cfg;
}

ojson counters_json(const SearchStats& s) {
    ojson j;
    j["solve_calls"] = s.solve_calls;
    j["branch_calls"] = s.branch_calls;
    j["split_evaluations"] = s.split_evaluations;
    j["d2_calls"] = s.d2_calls;
    j["d2_visits"] = s.d2_visits;
    j["cache_hits"] = s.cache_hits;
    j["cache_misses"] = s.cache_misses;
    j["pruned_nb"] = s.pruned_nb;
    j["pruned_is"] = s.pruned_is;
    j["pruned_sp"] = s.pruned_sp;
    return j;
}

ojson stats_json(const Dataset& data, const SolverConfig& cfg, const SolveOutcome& o) {
    ojson j;
    j["n"] = data.size();
    j["p"] = data.num_features();
    j["depth"] = cfg.max_depth;
    j["score"] = o.score;
    j["accuracy"] = 1.0 - static_cast<double>(o.score) / static_cast<double>(data.size());
    j["lower_bound"] = o.lower_bound;
    j["gap"] = o.gap();
    j["max_gap"] = o.resolved_max_gap;
    j["optimal"] = o.optimal();
    j["timed_out"] = o.timed_out;
    j["elapsed_s"] = o.elapsed_seconds;
    j["counters"] = counters_json(o.stats);
    ojson trace = ojson::array();
    for (const TracePoint& t : o.stats.trace) trace.push_back({t.elapsed_seconds, t.incumbent});
    j["trace"] = std::move(trace);
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    f << content;
    if (!f) throw DataError("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
    const Dataset data = load_csv(a.input, LabelColumn{a.common.label}, a.common.epsilon);
    SolverConfig cfg = make_config(a.common);
    cfg.enable_nb = !a.disable_nb;
    cfg.enable_is = !a.disable_is;
    cfg.enable_sp = !a.disable_sp;
    cfg.enable_d2 = !a.disable_d2;
    cfg.enable_cache = !a.disable_cache;
    cfg.validate();
    if (cfg.resolve_gap(data.size()) < 0) throw DataError("invalid max gap");

    Solver solver(data, cfg);
    const SolveOutcome o = solver.run();
    const std::string json = tree_to_json(o.tree, data.label_names());

    std::ostream& summary = a.out.empty() ? err : out;
    if (a.out.empty())
        out << json << '\n';
    else
        write_file(a.out, json + "\n");
    if (!a.stats_json.empty()) write_file(a.stats_json, stats_json(data, cfg, o).dump(2) + "\n");

    summary << "misclassifications: " << o.score << '\n'
            << "accuracy: " << std::setprecision(6)
            << 1.0 - static_cast<double>(o.score) / static_cast<double>(data.size()) << '\n'
            << "elapsed_s: " << o.elapsed_seconds << '\n'
            << "gap: " << o.gap() << '\n'
            << "optimal: " << (o.optimal() ? "true" : "false") << '\n'
            << "timed_out: " << (o.timed_out ? "true" : "false") << '\n';
    const ojson counters = counters_json(o.stats);
    for (const auto& [k, v] : counters.items()) summary << k << ": " << v << '\n';
    return o.timed_out ? kTimeout : kOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream&) {
    const Dataset data = load_csv(a.input, LabelColumn{a.label}, a.epsilon);
    ParsedTree parsed = tree_from_json(read_file(a.tree), data.label_names());
    const Evaluation e = evaluate(parsed.tree, SubsetView::full(data));
    out << "misclassifications: " << e.misclassifications << '\n'
        << "accuracy: " << std::setprecision(6) << e.accuracy << '\n';
    return kOk;
}

std::vector<fs::path> bench_inputs(const fs::path& input) {
    std::vector<fs::path> paths;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".csv") paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
    } else if (input.extension() == ".csv") {
        paths.push_back(input);
    } else {
        std::ifstream f(input);
        if (!f) throw DataError("cannot open dataset list " + input.string());
        std::string line;
        while (std::getline(f, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (line.empty() || line.front() == '#') continue;
            fs::path p(line);
            paths.push_back(p.is_absolute() ? p : input.parent_path() / p);
        }
    }
    return paths;
}

struct PruningConfig {
    const char* name;
    bool nb, is, sp;
};

constexpr PruningConfig kPruningConfigs[] = {
    {"none", false, false, false}, {"nb", true, false, false}, {"is", false, true, false},
    {"sp", false, false, true},    {"all", true, true, true},
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    const std::vector<fs::path> inputs = bench_inputs(a.input);
    if (inputs.empty()) throw DataError("no datasets found in " + a.input);

    std::ostringstream rows, trace;
    rows << "dataset,config,n,p,depth,score,optimal,runtime_s,d2_calls,split_evaluations,solve_calls,cache_hits,"
            "pruned_nb,pruned_is,pruned_sp,greedy_score\n";
    trace << "dataset,config,elapsed_s,incumbent\n";
    rows << std::setprecision(9);
    trace << std::setprecision(9);

    bool failed = false;
    for (const fs::path& path : inputs) {
        const std::string name = path.filename().string();
        try {
            const Dataset data = load_csv(path, LabelColumn{a.common.label}, a.common.epsilon);
            const SubsetView all = SubsetView::full(data);
            const Score greedy = evaluate(greedy_tree(all, a.common.depth), all).misclassifications;
            for (const PruningConfig& pc : kPruningConfigs) {
                SolverConfig cfg = make_config(a.common);
                cfg.enable_nb = pc.nb;
                cfg.enable_is = pc.is;
                cfg.enable_sp = pc.sp;
                Solver solver(data, cfg);
                const SolveOutcome o = solver.run();
                const SearchStats& s = o.stats;
                rows << name << ',' << pc.name << ',' << data.size() << ',' << data.num_features() << ','
                     << cfg.max_depth << ',' << o.score << ',' << (o.optimal() ? 1 : 0) << ',' << o.elapsed_seconds
                     << ',' << s.d2_calls << ',' << s.split_evaluations << ',' << s.solve_calls << ','
                     << s.cache_hits << ',' << s.pruned_nb << ',' << s.pruned_is << ',' << s.pruned_sp << ','
                     << greedy << '\n';
                for (const TracePoint& t : s.trace)
                    trace << name << ',' << pc.name << ',' << t.elapsed_seconds << ',' << t.incumbent << '\n';
            }
        } catch (const std::exception& e) {
            failed = true;
            err << name << ": " << e.what() << '\n';
        }
    }

    if (a.out.empty())
        out << rows.str();
    else
        write_file(a.out, rows.str());
    if (!a.trace.empty()) write_file(a.trace, trace.str());
    return failed ? kFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal classification trees on continuous features"};
    app.name("odt");
    app.require_subcommand(1);

    TrainArgs train;
    CLI::App* train_cmd = app.add_subcommand("train", "Train a tree and write it as JSON");
    train_cmd->add_option("input", train.input, "CSV file")->required();
    train_cmd->add_option("--out", train.out, "Tree JSON output path (default: stdout)");
    train_cmd->add_option("--stats-json", train.stats_json, "Write search statistics as JSON");
    add_common(train_cmd, train.common);
    train_cmd->add_flag("--disable-nb", train.disable_nb, "Disable neighbourhood pruning");
    train_cmd->add_flag("--disable-is", train.disable_is, "Disable interval shrinking");
    train_cmd->add_flag("--disable-sp", train.disable_sp, "Disable sub-interval pruning");
    train_cmd->add_flag("--disable-d2", train.disable_d2, "Disable the depth-two subroutine");
    train_cmd->add_flag("--disable-cache", train.disable_cache, "Disable subproblem caching");

    EvaluateArgs eval;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score a tree on a CSV file");
    eval_cmd->add_option("tree", eval.tree, "Tree JSON file")->required();
    eval_cmd->add_option("input", eval.input, "CSV file")->required();
    eval_cmd->add_option("--label", eval.label, "Label column: header name or 0-based index");
    eval_cmd->add_option("--epsilon", eval.epsilon, "Feature value tolerance")->check(CLI::NonNegativeNumber);

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Pruning ablation over a set of datasets");
    bench_cmd->add_option("input", bench.input, "Directory of CSV files, a CSV file, or a list file")->required();
    bench_cmd->add_option("--out", bench.out, "Result rows CSV (default: stdout)");
    bench_cmd->add_option("--trace", bench.trace, "Anytime trace CSV");
    add_common(bench_cmd, bench.common);

    std::vector<const char*> argv{"odt"};
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*train_cmd) return cmd_train(train, out, err);
        if (*eval_cmd) return cmd_evaluate(eval, out, err);
        return cmd_bench(bench, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace odt::cli
