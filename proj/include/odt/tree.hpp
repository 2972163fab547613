#pragma once

#include <string>
#include <vector>

#include "odt/dataset.hpp"

namespace odt {

/// Binary axis-aligned classification tree. Instances go left iff
/// x[feature] <= threshold.
class Tree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        Label label = 0;
        int left = -1;
        int right = -1;

        bool is_leaf() const { return feature < 0; }
    };

    Tree() : nodes_{Node{}} {}

    static Tree leaf(Label label);
    static Tree branch(int feature, double threshold, const Tree& left, const Tree& right);

    const Node& root() const { return nodes_.front(); }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    std::size_t node_count() const { return nodes_.size(); }

    // Number of branching levels on the longest root-to-leaf path.
    int depth() const;
    int max_feature() const;

    template <class RowAccessor>
    Label predict(RowAccessor&& x) const {
        int i = 0;
        while (!nodes_[static_cast<std::size_t>(i)].is_leaf()) {
            const Node& n = nodes_[static_cast<std::size_t>(i)];
            i = x(n.feature) <= n.threshold ? n.left : n.right;
        }
        return nodes_[static_cast<std::size_t>(i)].label;
    }

    Label predict(const Dataset& data, InstanceId i) const {
        return predict([&](int f) { return data.value(i, static_cast<std::size_t>(f)); });
    }

    friend bool operator==(const Tree& a, const Tree& b);

private:
    int append(const Tree& sub);
    std::vector<Node> nodes_;
};

inline bool operator==(const Tree::Node& a, const Tree::Node& b) {
    return a.feature == b.feature && a.threshold == b.threshold && a.label == b.label && a.left == b.left &&
           a.right == b.right;
}

// JSON schema, one object per node:
//   {"type":"branch","feature":int,"threshold":float,"left":node,"right":node}
//   {"type":"leaf","label":string-or-int}
// Leaf labels are written as the dataset's original label token when the
// dataset carries names, otherwise as integers.

std::string tree_to_json(const Tree& tree, const std::vector<std::string>& label_names = {});

struct ParsedTree {
    Tree tree;
    // The input table followed by any label names first seen in the JSON.
    std::vector<std::string> label_names;
};

/// Parses a tree. String labels resolve through `label_names`; unknown names
/// are appended to the returned table. Integer labels are kept as ids when
/// the table is empty and otherwise resolved by their decimal spelling.
/// Throws DataError on schema violations.
ParsedTree tree_from_json(const std::string& json, std::vector<std::string> label_names = {});

}  // namespace odt
