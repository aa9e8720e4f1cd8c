#include "vilenkin/tree.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "vilenkin/errors.hpp"

namespace vilenkin {

namespace {

std::size_t ipow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
    return r;
}

std::size_t encode_word(const std::vector<int>& w, int p) {
    std::size_t idx = 0;
    for (int d : w) idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(d);
    return idx;
}

std::vector<int> decode_word(std::size_t idx, int len, int p) {
    std::vector<int> w(static_cast<std::size_t>(len), 0);
    for (int i = len - 1; i >= 0; --i) {
        w[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(p));
        idx /= static_cast<std::size_t>(p);
    }
    return w;
}

/// Scratch tree used by the builders: flat arrays, vertex 0 is the root.
struct Scratch {
    int p, N;
    std::vector<int> label, parent, depth;

    static Scratch zero_chain(int p, int N) {
        Scratch s{p, N, {}, {}, {}};
        for (int i = 0; i < N; ++i) {
            s.label.push_back(0);
            s.parent.push_back(i - 1);
            s.depth.push_back(i + 1);
        }
        return s;
    }

    int add(int v, int c) {
        label.push_back(c);
        parent.push_back(v);
        depth.push_back(depth[static_cast<std::size_t>(v)] + 1);
        return static_cast<int>(label.size()) - 1;
    }
    void pop() {
        label.pop_back();
        parent.pop_back();
        depth.pop_back();
    }
    /// Labels of the k vertices ending at v, root-side first.
    std::vector<int> tail(int v, int k) const {
        std::vector<int> w(static_cast<std::size_t>(k));
        int u = v;
        for (int i = k - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(u)];
            u = parent[static_cast<std::size_t>(u)];
        }
        return w;
    }
    /// The N-window created by attaching label c under v.
    std::size_t window_of(int v, int c) const {
        std::vector<int> w = tail(v, N - 1);
        w.push_back(c);
        return encode_word(w, p);
    }

    std::vector<TreeNode> to_nodes() const {
        std::vector<TreeNode> nodes(label.size());
        for (std::size_t i = 0; i < label.size(); ++i)
            nodes[i] = TreeNode{static_cast<int>(i), label[i], parent[i], {}};
        return nodes;
    }
};

/// Lexicographically least de Bruijn sequence (concatenation of Lyndon words).
std::vector<int> debruijn_sequence(int p, int N) {
    std::vector<int> seq;
    std::vector<int> a(static_cast<std::size_t>(p * N + 1), 0);
    std::function<void(int, int)> db = [&](int t, int q) {
        if (t > N) {
            if (N % q == 0)
                for (int i = 1; i <= q; ++i) seq.push_back(a[static_cast<std::size_t>(i)]);
            return;
        }
        a[static_cast<std::size_t>(t)] = a[static_cast<std::size_t>(t - q)];
        db(t + 1, q);
        for (int j = a[static_cast<std::size_t>(t - q)] + 1; j < p; ++j) {
            a[static_cast<std::size_t>(t)] = j;
            db(t + 1, t);
        }
    };
    db(1, 1);
    return seq;
}

PTree finish(const Scratch& s) { return PTree(s.p, s.N, s.to_nodes(), 0); }

}  // namespace

PTree::PTree(int p, int N, const std::vector<TreeNode>& nodes, int root_id) : p_(p), N_(N) {
    if (N < 1) throw std::invalid_argument("PTree: N must be >= 1");
    if (nodes.empty()) throw FormatError("PTree: no nodes");

    std::map<int, const TreeNode*> by_id;
    for (const auto& n : nodes) {
        if (!by_id.emplace(n.id, &n).second)
            throw FormatError("PTree: duplicate node id " + std::to_string(n.id));
        if (n.label < 0 || n.label >= p)
            throw FormatError("PTree: node " + std::to_string(n.id) + " label out of range");
    }
    if (!by_id.count(root_id)) throw FormatError("PTree: missing root id");

    std::map<int, std::vector<int>> kids;
    int roots = 0;
    for (const auto& n : nodes) {
        if (n.parent < 0) {
            ++roots;
            if (n.id != root_id) throw FormatError("PTree: node " + std::to_string(n.id) + " is a second root");
        } else {
            if (!by_id.count(n.parent))
                throw FormatError("PTree: node " + std::to_string(n.id) + " has unknown parent");
            kids[n.parent].push_back(n.id);
        }
    }
    if (roots != 1) throw FormatError("PTree: expected exactly one root");

    // Canonical subtree serial; also detects cycles / disconnected nodes.
    std::map<int, std::string> serial;
    std::function<std::string(int, int)> build = [&](int id, int guard) -> std::string {
        if (guard > static_cast<int>(nodes.size()))
            throw FormatError("PTree: cycle through node " + std::to_string(id));
        std::vector<std::string> parts;
        for (int c : kids[id]) parts.push_back(build(c, guard + 1));
        std::sort(parts.begin(), parts.end());
        std::string s = "(" + std::to_string(by_id[id]->label);
        for (auto& q : parts) s += q;
        s += ")";
        serial[id] = s;
        return s;
    };
    build(root_id, 0);
    if (serial.size() != nodes.size()) {
        std::string orphans;
        for (const auto& n : nodes)
            if (!serial.count(n.id)) orphans += " " + std::to_string(n.id);
        throw FormatError("PTree: nodes unreachable from root:" + orphans);
    }

    // Emit in preorder, siblings ordered by (label, serial).
    nodes_.clear();
    std::function<void(int, int)> emit = [&](int id, int parent_new) {
        int my = static_cast<int>(nodes_.size());
        nodes_.push_back(TreeNode{my, by_id[id]->label, parent_new, {}});
        if (parent_new >= 0) nodes_[static_cast<std::size_t>(parent_new)].children.push_back(my);
        std::vector<int> cs = kids[id];
        std::sort(cs.begin(), cs.end(), [&](int a, int b) {
            int la = by_id[a]->label, lb = by_id[b]->label;
            if (la != lb) return la < lb;
            return serial[a] < serial[b];
        });
        for (int c : cs) emit(c, my);
    };
    emit(root_id, -1);
}

int PTree::depth(int id) const {
    int d = 0;
    for (int u = id; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent) ++d;
    return d;
}

int PTree::height() const {
    int h = 0;
    for (const auto& n : nodes_) h = std::max(h, depth(n.id));
    return h;
}

std::vector<int> PTree::path_labels(int id) const {
    std::vector<int> w;
    for (int u = id; u >= 0; u = nodes_[static_cast<std::size_t>(u)].parent)
        w.push_back(nodes_[static_cast<std::size_t>(u)].label);
    std::reverse(w.begin(), w.end());
    return w;
}

bool PTree::operator==(const PTree& o) const {
    if (p_ != o.p_ || N_ != o.N_ || nodes_.size() != o.nodes_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].label != o.nodes_[i].label || nodes_[i].parent != o.nodes_[i].parent)
            return false;
    }
    return true;
}

ValidationReport validate_nvalid(const PTree& tree) {
    ValidationReport rep;
    const int p = tree.p(), N = tree.N();

    for (const auto& n : tree.nodes()) {
        int d = tree.depth(n.id);
        rep.height = std::max(rep.height, d);
        if (d <= N && n.label != 0) {
            rep.zero_prefix_ok = false;
            rep.structural_errors.push_back("node " + std::to_string(n.id) +
                                            " at depth " + std::to_string(d) + " must carry label 0");
        }
    }

    const std::size_t total = ipow(p, N);
    std::vector<int> counts(total, 0);
    for (const auto& n : tree.nodes()) {
        if (tree.depth(n.id) < N) continue;
        std::vector<int> w;
        int u = n.id;
        for (int i = 0; i < N; ++i) {
            w.push_back(tree.node(u).label);
            u = tree.node(u).parent;
        }
        std::reverse(w.begin(), w.end());
        ++counts[encode_word(w, p)];
    }
    for (std::size_t i = 0; i < total; ++i) {
        Window w = decode_word(i, N, p);
        rep.window_counts[w] = counts[i];
        if (counts[i] == 0) rep.missing.push_back(w);
        if (counts[i] > 1) rep.duplicated.push_back(w);
    }
    rep.structure_ok = rep.structural_errors.empty();
    rep.valid = rep.structure_ok && rep.zero_prefix_ok && rep.missing.empty() && rep.duplicated.empty();
    return rep;
}

BuildStrategy parse_strategy(const std::string& name) {
    if (name == "debruijn-path" || name == "debruijn") return BuildStrategy::DeBruijnPath;
    if (name == "greedy-branch" || name == "greedy") return BuildStrategy::GreedyBranch;
    if (name == "min-height") return BuildStrategy::MinHeight;
    throw std::invalid_argument("unknown build strategy: " + name);
}

namespace {

PTree build_debruijn_path(int p, int N) {
    std::vector<int> seq = debruijn_sequence(p, N);
    // Linearize: the cyclic sequence starts with 0^N; repeat the first N-1
    // symbols so every word appears in the linear string.
    for (int i = 0; i < N - 1; ++i) seq.push_back(seq[static_cast<std::size_t>(i)]);
    Scratch s = Scratch::zero_chain(p, N);
    int v = N - 1;
    for (std::size_t i = static_cast<std::size_t>(N); i < seq.size(); ++i) v = s.add(v, seq[i]);
    return finish(s);
}

struct SearchBudget {
    long long remaining;
    void spend() {
        if (--remaining < 0) throw ResourceError("tree search budget exhausted");
    }
};

bool grow_random(Scratch& s, std::vector<char>& used, std::size_t& used_count, std::mt19937_64& rng,
                 SearchBudget& budget) {
    if (used_count == used.size()) return true;
    std::vector<std::pair<int, int>> moves;
    for (int v = s.N - 1; v < static_cast<int>(s.label.size()); ++v)
        for (int c = 0; c < s.p; ++c)
            if (!used[s.window_of(v, c)]) moves.emplace_back(v, c);
    std::shuffle(moves.begin(), moves.end(), rng);
    for (auto [v, c] : moves) {
        budget.spend();
        std::size_t w = s.window_of(v, c);
        if (used[w]) continue;
        used[w] = 1;
        ++used_count;
        s.add(v, c);
        if (grow_random(s, used, used_count, rng, budget)) return true;
        s.pop();
        used[w] = 0;
        --used_count;
    }
    return false;
}

bool grow_bounded(Scratch& s, std::vector<char>& used, std::size_t& used_count, int max_height,
                  SearchBudget& budget) {
    if (used_count == used.size()) return true;
    for (int v = s.N - 1; v < static_cast<int>(s.label.size()); ++v) {
        if (s.depth[static_cast<std::size_t>(v)] + 1 > max_height) continue;
        for (int c = 0; c < s.p; ++c) {
            std::size_t w = s.window_of(v, c);
            if (used[w]) continue;
            budget.spend();
            used[w] = 1;
            ++used_count;
            s.add(v, c);
            if (grow_bounded(s, used, used_count, max_height, budget)) return true;
            s.pop();
            used[w] = 0;
            --used_count;
        }
    }
    return false;
}

}  // namespace

PTree build_nvalid(int p, int N, BuildStrategy strategy, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("build_nvalid: N must be >= 1");
    switch (strategy) {
        case BuildStrategy::DeBruijnPath:
            return build_debruijn_path(p, N);
        case BuildStrategy::GreedyBranch: {
            Scratch s = Scratch::zero_chain(p, N);
            std::vector<char> used(ipow(p, N), 0);
            // The zero chain itself realizes the all-zero window.
            used[encode_word(std::vector<int>(static_cast<std::size_t>(N), 0), p)] = 1;
            std::size_t used_count = 1;
            std::mt19937_64 rng(seed);
            SearchBudget budget{4'000'000};
            if (!grow_random(s, used, used_count, rng, budget))
                throw ResourceError("greedy-branch search failed");
            return finish(s);
        }
        case BuildStrategy::MinHeight: {
            if (ipow(p, N) > 16) throw ResourceError("min-height search is limited to p^N <= 16");
            for (int h = N + 1; h <= static_cast<int>(ipow(p, N)) + N - 1; ++h) {
                Scratch s = Scratch::zero_chain(p, N);
                std::vector<char> used(ipow(p, N), 0);
                used[encode_word(std::vector<int>(static_cast<std::size_t>(N), 0), p)] = 1;
                std::size_t used_count = 1;
                SearchBudget budget{20'000'000};
                if (grow_bounded(s, used, used_count, h, budget)) return finish(s);
            }
            throw ResourceError("min-height search found no tree");  // unreachable
        }
    }
    throw std::invalid_argument("build_nvalid: bad strategy");
}

std::vector<PTree> enumerate_nvalid(int p, int N, std::size_t limit) {
    if (ipow(p, N) > 16) throw ResourceError("enumerate_nvalid is limited to p^N <= 16");
    std::vector<PTree> out;
    if (limit == 0) return out;

    Scratch s = Scratch::zero_chain(p, N);
    std::vector<char> used(ipow(p, N), 0);
    used[encode_word(std::vector<int>(static_cast<std::size_t>(N), 0), p)] = 1;
    std::size_t used_count = 1;

    // Preorder enumeration: at each vertex choose its full child set, then
    // recurse into the children left to right.  Every tree corresponds to
    // exactly one trace, so no deduplication is needed.
    std::function<bool(std::vector<int>)> rec = [&](std::vector<int> pending) -> bool {
        if (pending.empty()) {
            if (used_count == used.size()) {
                out.push_back(finish(s));
                if (out.size() >= limit) return true;
            }
            return false;
        }
        int v = pending.back();
        pending.pop_back();
        std::vector<int> options;
        for (int c = 0; c < p; ++c)
            if (!used[s.window_of(v, c)]) options.push_back(c);
        const std::size_t k = options.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            std::vector<int> added;
            std::vector<std::size_t> windows;
            for (std::size_t i = 0; i < k; ++i) {
                if (!(mask & (std::size_t{1} << i))) continue;
                std::size_t w = s.window_of(v, options[i]);
                used[w] = 1;
                ++used_count;
                windows.push_back(w);
                added.push_back(s.add(v, options[i]));
            }
            std::vector<int> next = pending;
            for (auto it = added.rbegin(); it != added.rend(); ++it) next.push_back(*it);
            if (rec(next)) return true;
            for (std::size_t i = 0; i < added.size(); ++i) s.pop();
            for (std::size_t w : windows) {
                used[w] = 0;
                --used_count;
            }
        }
        return false;
    };
    rec({N - 1});
    return out;
}

std::set<Window> collect_windows(const PTree& tree) {
    const int N = tree.N();
    std::set<Window> wins;
    for (const auto& n : tree.nodes()) {
        if (tree.depth(n.id) < N + 1) continue;
        std::vector<int> w;
        int u = n.id;
        for (int i = 0; i < N + 1; ++i) {
            w.push_back(tree.node(u).label);
            u = tree.node(u).parent;
        }
        std::reverse(w.begin(), w.end());
        wins.insert(w);
    }
    wins.insert(Window(static_cast<std::size_t>(N + 1), 0));
    return wins;
}

std::set<Window> allowed_windows(const PTree& tree) {
    std::set<Window> wins = collect_windows(tree);
    const std::size_t want = ipow(tree.p(), tree.N());
    if (wins.size() != want)
        throw MaskError("allowed_windows: tree is not N-valid (" + std::to_string(wins.size()) +
                        " windows, expected " + std::to_string(want) + ")");
    return wins;
}

PTree tree_from_support(const std::set<Window>& support, int p, int N) {
    const std::size_t want = ipow(p, N);
    const Window zero(static_cast<std::size_t>(N + 1), 0);
    if (!support.count(zero))
        throw MaskError("tree_from_support: support must contain the all-zero window");
    if (support.size() != want)
        throw MaskError("tree_from_support: expected " + std::to_string(want) + " windows, got " +
                        std::to_string(support.size()));
    // Row condition: every leaf-side N-suffix appears under exactly one window.
    std::set<std::vector<int>> suffixes;
    for (const auto& w : support) {
        if (static_cast<int>(w.size()) != N + 1)
            throw MaskError("tree_from_support: window of wrong length");
        suffixes.insert(std::vector<int>(w.begin() + 1, w.end()));
    }
    if (suffixes.size() != want)
        throw MaskError("tree_from_support: leaf-side suffixes of the support are not distinct");

    // Grow the walk tree under the zero chain: every support word is a path
    // grafted at its longest prefix already present, which is exactly a
    // depth-first expansion of the window transitions.
    Scratch s = Scratch::zero_chain(p, N);
    const int depth_cap = static_cast<int>(ipow(p, N)) + 2 * N + 2;
    std::function<void(int)> expand = [&](int v) {
        if (s.depth[static_cast<std::size_t>(v)] > depth_cap)
            throw MaskError("tree_from_support: window walk does not terminate");
        std::vector<int> state = s.tail(v, N);
        bool at_zero_chain = (v == N - 1);
        for (int c = 0; c < p; ++c) {
            if (at_zero_chain && c == 0) continue;  // zero extension, not a tree edge
            Window w = state;
            w.push_back(c);
            if (!support.count(w)) continue;
            expand(s.add(v, c));
        }
    };
    expand(N - 1);
    return finish(s);
}

}  // namespace vilenkin
