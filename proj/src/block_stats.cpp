#include "sbmkit/block_stats.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sbmkit {

Partition::Partition(std::vector<int> assignment_, int block_count_)
    : assignment(std::move(assignment_)), block_count(block_count_) {
    if (block_count < 1)
        throw std::invalid_argument("partition: block_count must be >= 1");
    for (int b : assignment)
        if (b < 0 || b >= block_count)
            throw std::invalid_argument("partition: block id out of range");
}

namespace {

int infer_block_count(const std::vector<int>& assignment, int requested) {
    int max_seen = -1;
    for (int b : assignment) max_seen = std::max(max_seen, b);
    return std::max(requested, max_seen + 1);
}

} // namespace

Partition parse_partition_json(const std::string& text, int block_count) {
    std::vector<int> assignment;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= text.size() || text[pos] != '[')
        throw std::runtime_error("partition json: expected '['");
    ++pos;
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        while (true) {
            skip_ws();
            std::size_t end = pos;
            if (end < text.size() && (text[end] == '-' || text[end] == '+')) ++end;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            if (end == pos)
                throw std::runtime_error("partition json: expected integer at offset " +
                                         std::to_string(pos));
            assignment.push_back(std::stoi(text.substr(pos, end - pos)));
            pos = end;
            skip_ws();
            if (pos >= text.size())
                throw std::runtime_error("partition json: unterminated array");
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (text[pos] == ']') {
                ++pos;
                break;
            }
            throw std::runtime_error("partition json: expected ',' or ']'");
        }
    }
    const int blocks = infer_block_count(assignment, std::max(block_count, 1));
    return Partition(std::move(assignment), blocks);
}

Partition parse_partition_text(const std::string& text, int block_count) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::pair<int, int>> rows;
    int max_node = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        int node, block;
        if (!(fields >> node)) continue;
        std::string extra;
        if (!(fields >> block) || (fields >> extra))
            throw std::runtime_error("partition line " + std::to_string(line_no) +
                                     ": expected '<node> <block>'");
        rows.emplace_back(node, block);
        max_node = std::max(max_node, node);
    }
    std::vector<int> assignment(max_node + 1, -1);
    for (auto [node, block] : rows) {
        if (node < 0)
            throw std::runtime_error("partition: negative node id");
        if (assignment[node] != -1)
            throw std::runtime_error("partition: duplicate node " + std::to_string(node));
        assignment[node] = block;
    }
    for (int i = 0; i <= max_node; ++i)
        if (assignment[i] == -1)
            throw std::runtime_error("partition: missing node " + std::to_string(i));
    const int blocks = infer_block_count(assignment, std::max(block_count, 1));
    return Partition(std::move(assignment), blocks);
}

Partition load_partition(const std::string& path, int block_count) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open partition: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '[') return parse_partition_json(text, block_count);
        break;
    }
    return parse_partition_text(text, block_count);
}

std::string partition_to_json(const Partition& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.assignment.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(p.assignment[i]);
    }
    out += "]";
    return out;
}

void save_partition_text(const Partition& p, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write partition: " + path);
    for (std::size_t i = 0; i < p.assignment.size(); ++i)
        out << i << ' ' << p.assignment[i] << '\n';
}

BlockStats::BlockStats(const Multigraph& g, Partition p)
    : graph_(&g), block_count_(p.block_count), assignment_(std::move(p.assignment)) {
    if (static_cast<int>(assignment_.size()) != g.node_count())
        throw std::invalid_argument("block stats: partition size != node count");
    rebuild();
    scratch_counts_.assign(block_count_, 0);
    scratch_touched_.clear();
}

void BlockStats::rebuild() {
    m_.assign(static_cast<std::size_t>(block_count_) * block_count_, 0);
    kappa_.assign(block_count_, 0);
    size_.assign(block_count_, 0);
    k_plus_.assign(graph_->node_count(), 0);
    for (int i = 0; i < graph_->node_count(); ++i)
        ++size_[assignment_[i]];
    for (const auto& [u, v] : graph_->edges()) {
        const int r = assignment_[u];
        const int s = assignment_[v];
        m_[idx(r, s)] += 1;
        m_[idx(s, r)] += 1; // a loop hits m_rr twice => contributes 2
        kappa_[r] += 1;
        kappa_[s] += 1;
        if (r == s) {
            k_plus_[u] += 1;
            k_plus_[v] += 1;
        }
    }
    if (has_factors()) {
        in_sum_.assign(block_count_, 0.0);
        out_sum_.assign(block_count_, 0.0);
        for (int i = 0; i < graph_->node_count(); ++i) {
            in_sum_[assignment_[i]] += factors_.in[i];
            out_sum_[assignment_[i]] += factors_.out[i];
        }
    }
}

void BlockStats::attach_factors(NodeFactors factors) {
    if (static_cast<int>(factors.in.size()) != graph_->node_count() ||
        static_cast<int>(factors.out.size()) != graph_->node_count())
        throw std::invalid_argument("attach_factors: factor size != node count");
    factors_ = std::move(factors);
    in_sum_.assign(block_count_, 0.0);
    out_sum_.assign(block_count_, 0.0);
    for (int i = 0; i < graph_->node_count(); ++i) {
        in_sum_[assignment_[i]] += factors_.in[i];
        out_sum_[assignment_[i]] += factors_.out[i];
    }
}

void BlockStats::neighbor_block_counts(int node, std::vector<long long>& counts,
                                       std::vector<int>& touched) const {
    counts.assign(block_count_, 0);
    touched.clear();
    for (int end : graph_->neighbors(node)) {
        if (end == node) continue; // self-loop ends handled by the caller
        const int t = assignment_[end];
        if (counts[t] == 0) touched.push_back(t);
        ++counts[t];
    }
}

void BlockStats::apply_move(int node, int to_block) {
    const int from = assignment_[node];
    if (to_block < 0 || to_block >= block_count_)
        throw std::out_of_range("apply_move: block out of range");
    if (from == to_block) return;

    auto& c = scratch_counts_;
    auto& touched = scratch_touched_;
    neighbor_block_counts(node, c, touched);
    const int loops2 = graph_->adjacency_count(node, node); // 2 * loop count
    const int k = graph_->degree(node);

    // edge-count matrix rows/columns r and s
    for (int t : touched) {
        if (t == from || t == to_block) continue;
        m_[idx(from, t)] -= c[t];
        m_[idx(t, from)] -= c[t];
        m_[idx(to_block, t)] += c[t];
        m_[idx(t, to_block)] += c[t];
        // neighbors in t keep their within-block degree
    }
    const long long c_r = c[from];
    const long long c_s = c[to_block];
    m_[idx(from, from)] -= 2 * c_r + loops2;
    m_[idx(to_block, to_block)] += 2 * c_s + loops2;
    m_[idx(from, to_block)] += c_r - c_s;
    m_[idx(to_block, from)] += c_r - c_s;

    kappa_[from] -= k;
    kappa_[to_block] += k;
    --size_[from];
    ++size_[to_block];

    // within-block degrees: node itself, then neighbors in the two blocks
    k_plus_[node] = static_cast<int>(c_s) + loops2;
    for (int end : graph_->neighbors(node)) {
        if (end == node) continue;
        const int t = assignment_[end];
        if (t == from) --k_plus_[end];
        else if (t == to_block) ++k_plus_[end];
    }

    if (has_factors()) {
        in_sum_[from] -= factors_.in[node];
        in_sum_[to_block] += factors_.in[node];
        out_sum_[from] -= factors_.out[node];
        out_sum_[to_block] += factors_.out[node];
    }

    assignment_[node] = to_block;
}

} // namespace sbmkit
