#include "odt/c_api.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>

#include "odt/solver.hpp"
#include "odt/tree.hpp"

namespace {

void set_error(char* err, size_t len, const char* msg) {
    if (err == nullptr || len == 0) return;
    std::strncpy(err, msg, len - 1);
    err[len - 1] = '\0';
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> read_names(const char* const* names, size_t count) {
    std::vector<std::string> out;
    if (names == nullptr) return out;
    for (size_t k = 0; k < count; ++k) {
        if (names[k] == nullptr) throw odt::DataError("null label name");
        out.emplace_back(names[k]);
    }
    return out;
}

}  // namespace

extern "C" int odt_fit(const double* x, size_t n, size_t p, const int32_t* y, const odt_fit_options* options,
                       char** tree_json, int64_t* score, int64_t* gap, char* err, size_t err_len) {
    try {
        if (x == nullptr || y == nullptr || options == nullptr || tree_json == nullptr)
            throw odt::DataError("null argument");
        if (n == 0 || p == 0) throw odt::DataError("need at least one row and one feature");
        std::vector<double> values(x, x + n * p);
        std::vector<odt::Label> labels(y, y + n);
        odt::Dataset data(std::move(values), p, std::move(labels),
                          read_names(options->label_names, options->num_label_names));

        odt::SolverConfig cfg;
        cfg.max_depth = options->depth;
        cfg.max_gap = options->max_gap;
        if (options->time_limit_seconds > 0) cfg.time_limit_seconds = options->time_limit_seconds;
        cfg.validate();

        odt::Solver solver(data, cfg);
        const odt::SolveOutcome o = solver.run();
        *tree_json = dup_string(odt::tree_to_json(o.tree, data.label_names()));
        if (score != nullptr) *score = o.score;
        if (gap != nullptr) *gap = o.gap();
        return o.timed_out ? ODT_TIMEOUT : ODT_OK;
    } catch (const std::exception& e) {
        set_error(err, err_len, e.what());
        return ODT_ERROR;
    }
}

extern "C" int odt_predict(const char* tree_json, const double* x, size_t n, size_t p,
                           const char* const* label_names, size_t num_label_names, int32_t* labels_out, char* err,
                           size_t err_len) {
    try {
        if (tree_json == nullptr || (n > 0 && (x == nullptr || labels_out == nullptr)))
            throw odt::DataError("null argument");
        const odt::ParsedTree parsed = odt::tree_from_json(tree_json, read_names(label_names, num_label_names));
        if (parsed.tree.max_feature() >= static_cast<int>(p))
            throw odt::DataError("tree uses feature " + std::to_string(parsed.tree.max_feature()) +
                                 " but only " + std::to_string(p) + " columns were given");
        for (size_t i = 0; i < n; ++i)
            labels_out[i] = parsed.tree.predict([&](int f) { return x[static_cast<size_t>(f) * n + i]; });
        return ODT_OK;
    } catch (const std::exception& e) {
        set_error(err, err_len, e.what());
        return ODT_ERROR;
    }
}

extern "C" void odt_free_string(char* s) { std::free(s); }
