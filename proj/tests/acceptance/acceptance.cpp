// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "odt/baseline.hpp"
#include "odt/cli.hpp"
#include "odt/depth2.hpp"
#include "odt/pruning.hpp"
#include "odt/solver.hpp"
#include "odt/tree.hpp"
#include "support/instances.hpp"

using namespace odt;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Verdict()>& check) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << seconds_since(t0);
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << " [" << os.str() << " s]" << std::endl;
}

SolveOutcome solve_with(const Dataset& d, int depth, SolverConfig c = {}) {
    c.max_depth = depth;
    Solver s(d, c);
    return s.run();
}

const std::vector<testing::Instance>& suite() {
    static const std::vector<testing::Instance> s = testing::oracle_suite(210);
    return s;
}

const std::vector<Score>& oracle_scores() {
    static const std::vector<Score> scores = [] {
        std::vector<Score> out;
        for (const auto& inst : suite()) out.push_back(brute_force_odt(SubsetView::full(inst.data), inst.depth).score);
        return out;
    }();
    return scores;
}

std::string to_csv(const Dataset& d) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t f = 0; f < d.num_features(); ++f) os << "x" << f << ",";
    os << "label\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t f = 0; f < d.num_features(); ++f) os << d.value(static_cast<InstanceId>(i), f) << ",";
        os << "c" << d.label(static_cast<InstanceId>(i)) << "\n";
    }
    return os.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(std::move(cells));
    }
    return rows;
}

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / ("odt_acceptance_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

// n rows, p continuous features, two labels from a depth-two rule on
// features 0..2 with 10% label noise.
Dataset synthetic(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(n * p);
    for (double& v : x) v = std::round(unit(rng) * 1e6) / 1e6;
    std::vector<Label> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x[i], b = x[n + i], c = x[2 * n + i];
        Label label = a <= 0.4 ? (b <= 0.7 ? 0 : 1) : (c <= 0.3 ? 1 : 0);
        if (unit(rng) < 0.1) label = 1 - label;
        y[i] = label;
    }
    return Dataset(std::move(x), p, std::move(y));
}

}  // namespace

int main() {
    report("oracle optimality", [] {
        const auto t0 = Clock::now();
        const auto& s = suite();
        const auto& opt = oracle_scores();
        int mismatches = 0;
        std::string first;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const SolveOutcome o = solve_with(s[i].data, s[i].depth);
            const bool ok = o.score == opt[i] && o.optimal() &&
                            evaluate(o.tree, SubsetView::full(s[i].data)).misclassifications == o.score;
            if (!ok && mismatches++ == 0) first = testing::describe(s[i]);
        }
        const double t = seconds_since(t0);
        return Verdict{mismatches == 0 && s.size() >= 200 && t < 60.0,
                       std::to_string(s.size()) + " instances, " + std::to_string(mismatches) +
                           " mismatches" + (first.empty() ? "" : " (first " + first + ")") +
                           ", exact equality, budget 60 s"};
    });

    report("six-value threshold example", [] {
        const Dataset d({0.4, 0.5, 0.5, 0.7, 0.8, 1.0}, 1, {0, 0, 0, 0, 0, 0});
        const SubsetView v = SubsetView::full(d);
        const auto unique = compute_unique_values(v, 0, kDefaultEpsilon);
        const SplitCandidates c = split_candidates(v, 0);
        const std::vector<double> expected{0.45, 0.6, 0.75, 0.9};
        bool ok = unique == std::vector<double>{0.4, 0.5, 0.7, 0.8, 1.0} && c.m() == 4;
        for (int k = 1; ok && k <= 4; ++k)
            ok = std::abs(c.threshold(k) - expected[static_cast<std::size_t>(k - 1)]) <= 1e-12;
        const auto kept = prune_nb({1, c.m()}, 3, 2, c);
        ok = ok && kept == std::vector<Interval>{{1, 1}} && std::abs(c.threshold(1) - 0.45) <= 1e-12;
        auto [l, r] = split_view(v, 0, c.threshold(3));
        ok = ok && l.size() == 4 && r.size() == 2;
        return Verdict{ok, "thresholds [0.45,0.6,0.75,0.9] (tol 1e-12); NB at 0.75 with delta 2 keeps only 0.45"};
    });

    report("depth-two equivalence", [] {
        std::size_t splits = 0, mismatches = 0;
        SolverConfig generic;
        generic.enable_d2 = false;
        generic.max_depth = 2;
        for (const auto& inst : suite()) {
            const SubsetView v = SubsetView::full(inst.data);
            Solver s(inst.data, generic);
            for (std::size_t f = 0; f < inst.data.num_features(); ++f) {
                const SplitCandidates c = split_candidates(v, f);
                for (int w = 1; w <= c.m(); ++w) {
                    const D2Result d2 = d2_split(v, c, w);
                    auto [left, right] = s.split_eval(v, 2, f, c.threshold(w));
                    ++splits;
                    if (!left.exact || !right.exact || left.score != d2.left.score || right.score != d2.right.score)
                        ++mismatches;
                }
            }
        }
        return Verdict{mismatches == 0 && splits > 0,
                       std::to_string(splits) + " root splits, " + std::to_string(mismatches) + " mismatches, exact"};
    });

    report("pruning soundness and effectiveness", [] {
        struct Cfg {
            const char* name;
            bool nb, is, sp;
        };
        const Cfg cfgs[] = {{"none", false, false, false}, {"nb", true, false, false}, {"is", false, true, false},
                            {"sp", false, false, true},    {"all", true, true, true}};
        std::map<std::string, std::uint64_t> d2_calls;
        int disagreements = 0;
        std::uint64_t worst_per_instance_pct = 100;
        for (std::uint64_t i = 0; i < 50; ++i) {
            const Dataset d = testing::random_dataset(90001 + i * 31, {500, 500, 6, 6, 2, 3});
            std::optional<Score> score;
            std::uint64_t none_calls = 0;
            for (const Cfg& c : cfgs) {
                SolverConfig sc;
                sc.enable_nb = c.nb;
                sc.enable_is = c.is;
                sc.enable_sp = c.sp;
                const SolveOutcome o = solve_with(d, 2, sc);
                if (score && *score != o.score) ++disagreements;
                score = o.score;
                d2_calls[c.name] += o.stats.d2_calls;
                if (std::string(c.name) == "none") none_calls = o.stats.d2_calls;
                if (std::string(c.name) == "all" && none_calls > 0)
                    worst_per_instance_pct =
                        std::min<std::uint64_t>(worst_per_instance_pct, 100 - 100 * o.stats.d2_calls / none_calls);
            }
        }
        const double reduction = 1.0 - static_cast<double>(d2_calls["all"]) / static_cast<double>(d2_calls["none"]);
        std::ostringstream os;
        os.precision(1);
        os << std::fixed << "50 instances (n=500, p=6, depth 2), " << disagreements
           << " score disagreements; depth-two calls none=" << d2_calls["none"] << " nb=" << d2_calls["nb"]
           << " is=" << d2_calls["is"] << " sp=" << d2_calls["sp"] << " all=" << d2_calls["all"] << ", all prunes "
           << 100.0 * reduction << "% (need >= 50%; worst instance " << worst_per_instance_pct << "%)";
        return Verdict{disagreements == 0 && reduction >= 0.5, os.str()};
    });

    report("gap guarantee", [] {
        const auto& s = suite();
        const auto& opt = oracle_scores();
        int violations = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (double g : {1.0, 2.0, 5.0, 0.01}) {
                SolverConfig c;
                c.max_gap = g;
                const SolveOutcome o = solve_with(s[i].data, s[i].depth, c);
                const Score allowed = g < 1.0 ? static_cast<Score>(std::floor(g * static_cast<double>(s[i].data.size())))
                                              : static_cast<Score>(g);
                if (o.score > opt[i] + allowed || o.score < opt[i]) ++violations;
            }
        return Verdict{violations == 0, "gaps {1,2,5,0.01n} on " + std::to_string(s.size()) + " instances, " +
                                            std::to_string(violations) + " violations of score <= oracle + gap"};
    });

    report("cache transparency", [] {
        const auto& s = suite();
        int differences = 0;
        std::uint64_t best_hits = 0;
        for (const auto& inst : s) {
            SolverConfig off;
            off.enable_cache = false;
            const SolveOutcome a = solve_with(inst.data, inst.depth);
            const SolveOutcome b = solve_with(inst.data, inst.depth, off);
            if (a.score != b.score) ++differences;
            if (inst.depth == 3) best_hits = std::max(best_hits, a.stats.cache_hits);
        }
        return Verdict{differences == 0 && best_hits > 0,
                       std::to_string(differences) + " score differences with cache off; max hits on a depth-3 "
                                                     "instance " +
                           std::to_string(best_hits)};
    });

    report("sentinel and bound contract", [] {
        std::size_t bounds = 0, exact = 0, violations = 0;
        for (const auto& inst : suite()) {
            std::map<std::pair<std::vector<InstanceId>, int>, Score> memo;
            auto opt = [&](const SubsetView& v, int depth) {
                auto key = std::make_pair(std::vector<InstanceId>(v.members().begin(), v.members().end()), depth);
                auto it = memo.find(key);
                if (it != memo.end()) return it->second;
                const Score sc = brute_force_odt(v, depth).score;
                memo.emplace(std::move(key), sc);
                return sc;
            };
            SolverConfig c;
            c.max_depth = inst.depth;
            Solver s(inst.data, c);
            s.set_result_observer([&](const SubsetView& v, int depth, Score cutoff, Score, const SubproblemResult& r) {
                const Score o = opt(v, depth);
                if (r.exact) {
                    ++exact;
                    if (r.score != o) ++violations;
                } else {
                    ++bounds;
                    if (r.score < cutoff || r.score > o) ++violations;
                }
            });
            s.run();
        }
        return Verdict{violations == 0 && bounds > 0,
                       std::to_string(bounds) + " bound results and " + std::to_string(exact) +
                           " exact results checked, " + std::to_string(violations) + " violations"};
    });

    report("runtime sanity", [] {
        const Dataset d = synthetic(10000, 10, 7);
        const SolveOutcome o = solve_with(d, 2);
        std::ostringstream os;
        os.precision(3);
        os << std::fixed << "n=10000 p=10 |Y|=2 depth 2 solved in " << o.elapsed_seconds << " s (limit 10 s), score "
           << o.score << ", optimal " << (o.optimal() ? "yes" : "no");
        return Verdict{o.optimal() && o.elapsed_seconds < 10.0, os.str()};
    });

    report("determinism", [] {
        ScratchDir dir;
        bool ok = true;
        int runs = 0;
        for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
            const fs::path csv = dir.path / ("d" + std::to_string(seed) + ".csv");
            std::ofstream(csv) << to_csv(testing::random_dataset(seed, {300, 300, 5, 5, 3, 3}));
            std::string tree[2];
            nlohmann::json counters[2];
            for (int k = 0; k < 2; ++k) {
                const fs::path out = dir.path / ("t" + std::to_string(k) + ".json");
                const fs::path stats = dir.path / ("s" + std::to_string(k) + ".json");
                std::ostringstream sink;
                if (cli::run({"train", csv.string(), "--depth", "3", "--out", out.string(), "--stats-json",
                              stats.string()},
                             sink, sink) != cli::kOk)
                    ok = false;
                tree[k] = slurp(out);
                counters[k] = nlohmann::json::parse(slurp(stats))["counters"];
            }
            ok = ok && !tree[0].empty() && tree[0] == tree[1] && counters[0] == counters[1];
            ++runs;
        }
        return Verdict{ok, std::to_string(runs) + " datasets trained twice at depth 3: byte-identical trees and counters"};
    });

    report("anytime monotonicity", [] {
        ScratchDir dir;
        fs::create_directories(dir.path / "sets");
        for (std::uint64_t i = 0; i < 6; ++i)
            std::ofstream(dir.path / "sets" / ("d" + std::to_string(i) + ".csv"))
                << to_csv(testing::random_dataset(500 + i, {150, 400, 3, 6, 2, 3}));
        std::ostringstream sink;
        const int code = cli::run({"bench", (dir.path / "sets").string(), "--depth", "3", "--out",
                                   (dir.path / "rows.csv").string(), "--trace", (dir.path / "trace.csv").string()},
                                  sink, sink);
        std::map<std::pair<std::string, std::string>, Score> final_score;
        for (const auto& row : read_csv_rows(dir.path / "rows.csv")) final_score[{row[0], row[1]}] = std::stoll(row[5]);
        std::map<std::pair<std::string, std::string>, std::vector<Score>> traces;
        for (const auto& row : read_csv_rows(dir.path / "trace.csv"))
            traces[{row[0], row[1]}].push_back(std::stoll(row[3]));
        int bad = 0;
        for (const auto& [key, tr] : traces) {
            for (std::size_t i = 1; i < tr.size(); ++i)
                if (tr[i] > tr[i - 1]) ++bad;
            if (tr.empty() || tr.back() != final_score[key]) ++bad;
        }
        const bool ok = code == cli::kOk && traces.size() == 30 && final_score.size() == 30 && bad == 0;
        return Verdict{ok, std::to_string(traces.size()) + " traces from bench, " + std::to_string(bad) +
                               " violations (non-increasing, ending at the reported score)"};
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
