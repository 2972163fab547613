#include "odt/tree.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace odt {

using ojson = nlohmann::ordered_json;

Tree Tree::leaf(Label label) {
    Tree t;
    t.nodes_.front().label = label;
    return t;
}

Tree Tree::branch(int feature, double threshold, const Tree& left, const Tree& right) {
    Tree t;
    t.nodes_.front().feature = feature;
    t.nodes_.front().threshold = threshold;
    const int l = t.append(left);
    const int r = t.append(right);
    t.nodes_.front().left = l;
    t.nodes_.front().right = r;
    return t;
}

int Tree::append(const Tree& sub) {
    const int offset = static_cast<int>(nodes_.size());
    for (Node n : sub.nodes_) {
        if (!n.is_leaf()) {
            n.left += offset;
            n.right += offset;
        }
        nodes_.push_back(n);
    }
    return offset;
}

int Tree::depth() const {
    // Children always follow their parent, so a reverse sweep sees them first.
    std::vector<int> d(nodes_.size(), 0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        const Node& n = nodes_[i];
        if (!n.is_leaf())
            d[i] = 1 + std::max(d[static_cast<std::size_t>(n.left)], d[static_cast<std::size_t>(n.right)]);
    }
    return d.front();
}

int Tree::max_feature() const {
    int m = -1;
    for (const Node& n : nodes_) m = std::max(m, n.feature);
    return m;
}

bool operator==(const Tree& a, const Tree& b) { return a.nodes_ == b.nodes_; }

namespace {

ojson node_to_json(const Tree& tree, int i, const std::vector<std::string>& names) {
    const Tree::Node& n = tree.node(i);
    ojson j;
    if (n.is_leaf()) {
        j["type"] = "leaf";
        if (!names.empty() && n.label >= 0 && static_cast<std::size_t>(n.label) < names.size())
            j["label"] = names[static_cast<std::size_t>(n.label)];
        else
            j["label"] = n.label;
        return j;
    }
    j["type"] = "branch";
    j["feature"] = n.feature;
    j["threshold"] = n.threshold;
    j["left"] = node_to_json(tree, n.left, names);
    j["right"] = node_to_json(tree, n.right, names);
    return j;
}

Label intern(std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<Label>(it - names.begin());
    names.push_back(name);
    return static_cast<Label>(names.size() - 1);
}

Tree node_from_json(const ojson& j, std::vector<std::string>& names, int depth) {
    if (depth > 64) throw DataError("tree JSON nests too deeply");
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw DataError("tree node must be an object with a string \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "leaf") {
        if (!j.contains("label")) throw DataError("leaf node without \"label\"");
        const ojson& label = j["label"];
        if (label.is_string()) return Tree::leaf(intern(names, label.get<std::string>()));
        if (label.is_number_integer()) {
            const auto id = label.get<std::int64_t>();
            if (id < 0) throw DataError("leaf label must be non-negative");
            if (names.empty()) return Tree::leaf(static_cast<Label>(id));
            return Tree::leaf(intern(names, std::to_string(id)));
        }
        throw DataError("leaf label must be a string or an integer");
    }
    if (type != "branch") throw DataError("unknown node type '" + type + "'");
    for (const char* key : {"feature", "threshold", "left", "right"})
        if (!j.contains(key)) throw DataError(std::string("branch node without \"") + key + "\"");
    if (!j["feature"].is_number_integer() || j["feature"].get<std::int64_t>() < 0)
        throw DataError("branch feature must be a non-negative integer");
    if (!j["threshold"].is_number() || !std::isfinite(j["threshold"].get<double>()))
        throw DataError("branch threshold must be a finite number");
    Tree left = node_from_json(j["left"], names, depth + 1);
    Tree right = node_from_json(j["right"], names, depth + 1);
    return Tree::branch(static_cast<int>(j["feature"].get<std::int64_t>()), j["threshold"].get<double>(), left,
                        right);
}

}  // namespace

std::string tree_to_json(const Tree& tree, const std::vector<std::string>& label_names) {
    return node_to_json(tree, 0, label_names).dump();
}

ParsedTree tree_from_json(const std::string& json, std::vector<std::string> label_names) {
    ojson j;
    try {
        j = ojson::parse(json);
    } catch (const ojson::parse_error& e) {
        throw DataError(std::string("invalid tree JSON: ") + e.what());
    }
    Tree t = node_from_json(j, label_names, 0);
    return {std::move(t), std::move(label_names)};
}

}  // namespace odt
