#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "odt/dataset.hpp"

namespace odt {

/// Selects the label column: a header name, a 0-based index, or (empty) the
/// last column.
struct LabelColumn {
    std::string column;
};

/// Reads a comma-separated table. Row 1 is a header iff one of its feature
/// cells is non-numeric (or the label is selected by name). Labels are
/// re-encoded densely in order of first appearance.
Dataset load_csv(const std::filesystem::path& path, const LabelColumn& label = {},
                 double epsilon = kDefaultEpsilon);

Dataset parse_csv(std::istream& in, const LabelColumn& label = {}, double epsilon = kDefaultEpsilon);

}  // namespace odt
