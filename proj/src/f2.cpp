#include "stabent/f2.hpp"

#include <bit>

namespace stabent {

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool BitVec::parity_and(const BitVec& o) const {
  uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t BitVec::popcount_and(const BitVec& o) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    c += std::popcount(words_[w] & o.words_[w]);
  return c;
}

std::size_t BitVec::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
  return len_;
}

BinMatrix BinMatrix::transposed() const {
  BinMatrix t(n_cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < n_cols_; ++j)
      if (rows_[i].get(j)) t.row(j).set(i, true);
  return t;
}

RrefResult rref(const BinMatrix& m) {
  RrefResult res;
  res.m = m;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.n_cols() && r < m.n_rows(); ++col) {
    std::size_t piv = m.n_rows();
    for (std::size_t i = r; i < m.n_rows(); ++i)
      if (res.m.row(i).get(col)) {
        piv = i;
        break;
      }
    if (piv == m.n_rows()) continue;
    std::swap(res.m.row(r), res.m.row(piv));
    for (std::size_t i = 0; i < m.n_rows(); ++i)
      if (i != r && res.m.row(i).get(col)) res.m.row(i).xor_with(res.m.row(r));
    res.pivot_cols.push_back(col);
    ++r;
  }
  res.rank = r;
  return res;
}

std::size_t rank(const BinMatrix& m) { return rref(m).rank; }

BinMatrix kernel_basis(const BinMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.n_cols(), false);
  std::vector<std::size_t> pivot_row(m.n_cols(), 0);
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    is_pivot[r.pivot_cols[i]] = true;
    pivot_row[r.pivot_cols[i]] = i;
  }
  BinMatrix basis(0, m.n_cols());
  for (std::size_t free_col = 0; free_col < m.n_cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    BitVec v(m.n_cols());
    v.set(free_col, true);
    for (std::size_t pc : r.pivot_cols)
      if (r.m.row(pivot_row[pc]).get(free_col)) v.set(pc, true);
    basis.append_row(v);
  }
  return basis;
}

bool in_rowspan(const BitVec& v, const BinMatrix& m, BitVec* combination) {
  // Eliminate v against the rows while tracking which original rows were
  // used; work on an augmented copy [row | e_i].
  std::size_t nr = m.n_rows(), nc = m.n_cols();
  std::vector<BitVec> rows(nr);
  std::vector<BitVec> tags(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    rows[i] = m.row(i);
    tags[i] = BitVec(nr);
    tags[i].set(i, true);
  }
  BitVec target = v;
  BitVec used(nr);
  std::size_t r = 0;
  for (std::size_t col = 0; col < nc && r < nr; ++col) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (rows[i].get(col)) {
        piv = i;
        break;
      }
    if (piv == nr) continue;
    std::swap(rows[r], rows[piv]);
    std::swap(tags[r], tags[piv]);
    for (std::size_t i = r + 1; i < nr; ++i)
      if (rows[i].get(col)) {
        rows[i].xor_with(rows[r]);
        tags[i].xor_with(tags[r]);
      }
    if (target.get(col)) {
      target.xor_with(rows[r]);
      used.xor_with(tags[r]);
    }
    ++r;
  }
  if (!target.is_zero()) return false;
  if (combination) *combination = used;
  return true;
}

}  // namespace stabent
