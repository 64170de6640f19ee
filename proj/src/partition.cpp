#include "rogers/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rogers {

Partition normalize_partition(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition with empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition{std::move(blocks)};
}

std::vector<Partition> enumerate_partitions(int k) {
  if (k < 1) throw std::invalid_argument("enumerate_partitions: k >= 1 required");
  std::vector<Partition> out;
  std::vector<int> rgs(k, 0);  // restricted growth string
  while (true) {
    int m = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(m);
    for (int i = 0; i < k; ++i) blocks[rgs[i]].push_back(i);
    out.push_back(Partition{std::move(blocks)});  // RGS blocks are already canonical
    int i = k - 1;
    for (; i > 0; --i) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

std::vector<Partition> enumerate_partitions_min_block(int k, int min_block_size) {
  std::vector<Partition> out;
  for (auto& p : enumerate_partitions(k)) {
    bool ok = true;
    for (auto& b : p.blocks)
      if (static_cast<int>(b.size()) < min_block_size) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

Int bell_number(int k) {
  // Bell triangle.
  std::vector<Int> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<Int> next;
    next.reserve(i + 1);
    next.push_back(row.back());
    for (size_t j = 0; j < row.size(); ++j) next.push_back(next.back() + row[j]);
    row = std::move(next);
  }
  return row.front();
}

Int double_factorial(int n) {
  Int out = 1;
  for (int i = n; i >= 2; i -= 2) out *= i;
  return out;
}

AdmissibleMatrix partition_to_matrix(const Partition& p) {
  return partition_to_matrix_signed(p, std::vector<int>(p.k(), 1));
}

AdmissibleMatrix partition_to_matrix_signed(const Partition& p, const std::vector<int>& row_signs) {
  const int k = p.k();
  const int m = static_cast<int>(p.blocks.size());
  if (static_cast<int>(row_signs.size()) != k)
    throw std::invalid_argument("partition_to_matrix_signed: sign count mismatch");
  IntMatrix mat(k, m);
  for (int j = 0; j < m; ++j)
    for (int i : p.blocks[j]) {
      int s = (i == p.blocks[j].front()) ? 1 : row_signs[i];
      if (s != 1 && s != -1) throw std::invalid_argument("row sign must be +-1");
      mat(i, j) = s;
    }
  return require_admissible(mat, 1);
}

Partition matrix_to_partition(const AdmissibleMatrix& m) {
  if (classify(m) != TermClass::Main)
    throw std::invalid_argument("matrix_to_partition: matrix is not in the main class");
  std::vector<std::vector<int>> blocks(m.r());
  for (int i = 0; i < m.k(); ++i)
    for (int j = 0; j < m.r(); ++j)
      if (m.entries(i, j) != 0) blocks[j].push_back(i);
  return normalize_partition(std::move(blocks));
}

std::vector<AdmissibleMatrix> enumerate_main_family(int k, MainFamily family) {
  std::vector<AdmissibleMatrix> out;
  for (auto& p : enumerate_partitions(k)) {
    if (family != MainFamily::CongruenceQ2) {
      out.push_back(partition_to_matrix(p));
      continue;
    }
    // q = 2: +-1 on the k - #blocks rows outside the block minima.
    std::vector<int> free_rows;
    std::vector<bool> is_min(k, false);
    for (auto& b : p.blocks) is_min[b.front()] = true;
    for (int i = 0; i < k; ++i)
      if (!is_min[i]) free_rows.push_back(i);
    const size_t count = size_t{1} << free_rows.size();
    for (size_t mask = 0; mask < count; ++mask) {
      std::vector<int> signs(k, 1);
      for (size_t t = 0; t < free_rows.size(); ++t)
        if (mask & (size_t{1} << t)) signs[free_rows[t]] = -1;
      out.push_back(partition_to_matrix_signed(p, signs));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rogers
