#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vilenkin/report.hpp"

namespace vilenkin {

/// A run of N or N+1 consecutive vertex labels along the root-to-leaf
/// direction, root-side first.
using Window = std::vector<int>;

struct TreeNode {
    int id;
    int label;
    int parent;  // -1 for the root
    std::vector<int> children;
};

/// Rooted labeled tree on the alphabet {0,..,p-1} whose first N vertices form
/// the zero chain.  Nodes are held in a canonical preorder with siblings
/// sorted, so equality is equality of shape and labels.
class PTree {
public:
    PTree(int p, int N, const std::vector<TreeNode>& nodes, int root_id);

    int p() const { return p_; }
    int N() const { return N_; }
    int root() const { return 0; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    /// Depth in vertices: the root has depth 1.
    int depth(int id) const;
    /// Number of vertices on the longest root-to-leaf path.
    int height() const;
    std::vector<int> path_labels(int id) const;

    bool operator==(const PTree& o) const;

private:
    int p_, N_;
    std::vector<TreeNode> nodes_;  // canonical preorder, ids are positions
};

struct ValidationReport {
    bool structure_ok = true;
    std::vector<std::string> structural_errors;
    bool zero_prefix_ok = true;
    std::map<Window, int> window_counts;  // every length-N word over Z_p
    std::vector<Window> missing;
    std::vector<Window> duplicated;
    int height = 0;
    bool valid = false;
};

/// Count the occurrences of every length-N word as N consecutive vertices; a
/// tree is N-valid iff every count is exactly one and the zero prefix holds.
ValidationReport validate_nvalid(const PTree& tree);

enum class BuildStrategy { DeBruijnPath, GreedyBranch, MinHeight };
BuildStrategy parse_strategy(const std::string& name);

/// Construct an N-valid tree.  DeBruijnPath lays the lexicographically least
/// de Bruijn sequence of order N out as a single path (height p^N + N - 1);
/// GreedyBranch grows a random tree by depth-first insertion of unused
/// windows with backtracking; MinHeight searches exhaustively for a tree of
/// least height (small p^N only).
PTree build_nvalid(int p, int N, BuildStrategy strategy, std::uint64_t seed = 0);

/// All distinct N-valid trees, sibling order normalized.  Guarded to
/// p^N <= 16.
std::vector<PTree> enumerate_nvalid(int p, int N, std::size_t limit = SIZE_MAX);

/// The (N+1)-vertex windows of the tree plus the all-zero window that encodes
/// the zero extension above the root.  No validity check: also usable on
/// broken trees to build deliberately failing masks.
std::set<Window> collect_windows(const PTree& tree);

/// collect_windows with the cardinality contract enforced: an N-valid tree
/// has exactly p^N windows and the map onto leaf-side N-suffixes is a
/// bijection.  Throws MaskError otherwise.
std::set<Window> allowed_windows(const PTree& tree);

/// Rebuild the tree from its window set by the path-insertion procedure:
/// walk every support word, prepend the zero chain, and graft each path at
/// its longest prefix already in the tree.
PTree tree_from_support(const std::set<Window>& support, int p, int N);

}  // namespace vilenkin
