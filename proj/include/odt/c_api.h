#ifndef ODT_C_API_H
#define ODT_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. */
#define ODT_OK 0
#define ODT_ERROR 1
#define ODT_TIMEOUT 2

typedef struct {
    int depth;
    /* < 1: fraction of n; >= 1: whole number of misclassifications. */
    double max_gap;
    /* <= 0 disables the limit. */
    double time_limit_seconds;
    /* Optional: label_names[y] is written for label y in the tree JSON.
     * NULL writes integer labels. */
    const char* const* label_names;
    size_t num_label_names;
} odt_fit_options;

/* x is column-major (x[f * n + i]), y holds non-negative labels.
 * On ODT_OK or ODT_TIMEOUT *tree_json receives a string to release with
 * odt_free_string and score/gap are filled. On error a message is written
 * to err (up to err_len bytes, NUL-terminated). */
int odt_fit(const double* x, size_t n, size_t p, const int32_t* y, const odt_fit_options* options,
            char** tree_json, int64_t* score, int64_t* gap, char* err, size_t err_len);

/* Predicts n rows of the column-major matrix x into labels_out. String
 * labels in the tree resolve through label_names (may be NULL); names not in
 * the table get ids from num_label_names upward in order of appearance. */
int odt_predict(const char* tree_json, const double* x, size_t n, size_t p, const char* const* label_names,
                size_t num_label_names, int32_t* labels_out, char* err, size_t err_len);

void odt_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
