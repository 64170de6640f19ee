#pragma once

#include <vector>

#include "rogers/admissible.hpp"
#include "rogers/rational.hpp"

namespace rogers {

/// A set partition of {0,...,k-1}. Blocks are sorted by their minima and
/// each block is sorted ascending, so equality is structural.
struct Partition {
  std::vector<std::vector<int>> blocks;

  int k() const {
    int n = 0;
    for (auto& b : blocks) n += static_cast<int>(b.size());
    return n;
  }
  std::vector<int> block_minima() const {
    std::vector<int> m;
    m.reserve(blocks.size());
    for (auto& b : blocks) m.push_back(b.front());
    return m;
  }
  bool operator==(const Partition& o) const { return blocks == o.blocks; }
};

Partition normalize_partition(std::vector<std::vector<int>> blocks);

/// All partitions of {0,...,k-1} via restricted growth strings.
std::vector<Partition> enumerate_partitions(int k);

/// Partitions with every block of size >= min_block_size.
std::vector<Partition> enumerate_partitions_min_block(int k, int min_block_size);

Int bell_number(int k);
Int double_factorial(int n);  // n!! with (-1)!! = 0!! = 1

/// The main-family matrix of a partition: one +1 per row, column j supported
/// on block j. Signs, when given, apply to rows outside the block minima
/// (the q = 2 congruence variant); minima rows always carry +1.
AdmissibleMatrix partition_to_matrix(const Partition& p);
AdmissibleMatrix partition_to_matrix_signed(const Partition& p, const std::vector<int>& row_signs);

/// Inverse of the above on the main family; uses only the support pattern,
/// so q = 2 sign choices collapse to the same partition. Throws on matrices
/// outside the main class.
Partition matrix_to_partition(const AdmissibleMatrix& m);

enum class MainFamily { Affine, CongruenceQ3Plus, CongruenceQ2 };

/// The matrices of the main family M^k: all partition matrices for the
/// affine and q >= 3 congruence cases (Bell(k) of them), and all sign
/// choices on non-minima rows for q = 2.
std::vector<AdmissibleMatrix> enumerate_main_family(int k, MainFamily family);

}  // namespace rogers
