#include "sbmkit/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sbmkit/rng.hpp"

namespace sbmkit {

Multigraph::Multigraph(int node_count, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (node_count_ < 0)
        throw std::invalid_argument("multigraph: negative node count");
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= node_count_ || v < 0 || v >= node_count_)
            throw std::invalid_argument("multigraph: edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    if (labels_.empty()) {
        labels_.reserve(node_count_);
        for (int i = 0; i < node_count_; ++i)
            labels_.push_back(std::to_string(i));
    } else if (static_cast<int>(labels_.size()) != node_count_) {
        throw std::invalid_argument("multigraph: label count != node count");
    }
    build_endpoints();
}

void Multigraph::build_endpoints() {
    endpoints_.assign(node_count_, {});
    for (const auto& [u, v] : edges_) {
        endpoints_[u].push_back(v);
        endpoints_[v].push_back(u); // a loop lists u twice, degree += 2
    }
}

Multigraph Multigraph::parse_edge_list(std::istream& in) {
    std::map<std::string, int> ids;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = ids.emplace(tok, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(tok);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue; // blank line
        if (!(fields >> b) || (fields >> extra))
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected two tokens");
        const int ua = intern(a); // fixed order: ids must not depend on the
        const int ub = intern(b); // compiler's argument evaluation sequence
        edges.emplace_back(ua, ub);
    }
    const int n = static_cast<int>(labels.size()); // before the move below
    return Multigraph(n, std::move(edges), std::move(labels));
}

Multigraph Multigraph::parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Multigraph Multigraph::load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open edge list: " + path);
    return parse_edge_list(in);
}

void Multigraph::save_edge_list(std::ostream& out) const {
    for (const auto& [u, v] : edges_)
        out << labels_[u] << ' ' << labels_[v] << '\n';
}

void Multigraph::save_edge_list(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write edge list: " + path);
    save_edge_list(out);
}

Multigraph Multigraph::twin_stars() {
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int leaf = 2; leaf <= 5; ++leaf) edges.emplace_back(0, leaf);
    for (int leaf = 6; leaf <= 9; ++leaf) edges.emplace_back(1, leaf);
    return Multigraph(10, std::move(edges));
}

Multigraph Multigraph::simplified() const {
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : edges_)
        if (seen.insert(e).second) edges.push_back(e);
    return Multigraph(node_count_, std::move(edges), labels_);
}

Multigraph Multigraph::sparsified(int remove_count, std::uint64_t seed) const {
    if (remove_count < 0 || remove_count > edge_count())
        throw std::invalid_argument("sparsify: remove_count out of range");
    std::vector<std::pair<int, int>> pool = edges_;
    Rng rng(seed);
    // partial Fisher-Yates: move removals to the back, keep the front
    std::size_t keep = pool.size();
    for (int r = 0; r < remove_count; ++r) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_below(keep));
        std::swap(pool[j], pool[keep - 1]);
        --keep;
    }
    pool.resize(keep);

    std::vector<int> incident(node_count_, 0);
    for (const auto& [u, v] : pool) {
        incident[u] = 1;
        incident[v] = 1;
    }
    std::vector<int> new_id(node_count_, -1);
    std::vector<std::string> labels;
    int next = 0;
    for (int i = 0; i < node_count_; ++i) {
        if (incident[i]) {
            new_id[i] = next++;
            labels.push_back(labels_[i]);
        }
    }
    for (auto& [u, v] : pool) {
        u = new_id[u];
        v = new_id[v];
    }
    return Multigraph(next, std::move(pool), std::move(labels));
}

Multigraph Multigraph::save_ordered(std::vector<int>* old_to_new) const {
    std::vector<int> new_id(node_count_, -1);
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
    edges.reserve(edges_.size());
    int next = 0;
    auto visit = [&](int i) {
        if (new_id[i] < 0) {
            new_id[i] = next++;
            labels.push_back(labels_[i]);
        }
        return new_id[i];
    };
    for (const auto& [u, v] : edges_) {
        const int nu = visit(u);
        const int nv = visit(v);
        edges.emplace_back(nu, nv);
    }
    if (old_to_new) *old_to_new = new_id;
    return Multigraph(next, std::move(edges), std::move(labels));
}

int Multigraph::adjacency_count(int i, int j) const {
    if (i < 0 || i >= node_count_ || j < 0 || j >= node_count_)
        throw std::out_of_range("adjacency_count: node out of range");
    int count = 0;
    for (int end : endpoints_[i])
        if (end == j) ++count;
    return count; // i == j: each loop listed i twice, so A_ii = 2 * loops
}

double Multigraph::mean_degree() const {
    if (node_count_ == 0) return 0.0;
    return static_cast<double>(total_degree()) / node_count_;
}

} // namespace sbmkit
