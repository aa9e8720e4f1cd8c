#pragma once

#include <vector>

#include "vilenkin/tree.hpp"

namespace vilenkin::fixtures {

/// The worked p = 3, N = 2 example: height 6, nine windows.
///
///   0 - 0 - 2 - 1 - 0
///            \- 0 - 1 - 1
///            |       \- 2
///            \- 2
inline PTree worked_tree_3_2() {
    std::vector<TreeNode> nodes = {
        {0, 0, -1, {}}, {1, 0, 0, {}}, {2, 2, 1, {}}, {3, 1, 2, {}}, {4, 0, 2, {}},
        {5, 2, 2, {}},  {6, 0, 3, {}}, {7, 1, 4, {}}, {8, 1, 7, {}}, {9, 2, 7, {}},
    };
    return PTree(3, 2, nodes, 0);
}

/// Star tree 0 -> {1, .., p-1}: the unique minimal 1-valid tree; its mask is
/// the Haar mask.
inline PTree haar_tree(int p) {
    std::vector<TreeNode> nodes;
    nodes.push_back({0, 0, -1, {}});
    for (int c = 1; c < p; ++c) nodes.push_back({c, c, 0, {}});
    return PTree(p, 1, nodes, 0);
}

/// p = 3, N = 1 tree with the 1-window "1" duplicated (0 -> {1, 2}, 2 -> 1):
/// its mask violates the unit row sums and the shifts of its "refinable"
/// function are not orthonormal.
inline PTree duplicated_window_tree() {
    std::vector<TreeNode> nodes = {
        {0, 0, -1, {}}, {1, 1, 0, {}}, {2, 2, 0, {}}, {3, 1, 2, {}},
    };
    return PTree(3, 1, nodes, 0);
}

}  // namespace vilenkin::fixtures
