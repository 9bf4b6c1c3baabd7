#pragma once

#include <cstdint>
#include <vector>

namespace stabent {

// Packed binary vector over GF(2). Length is fixed at construction; all
// arithmetic is mod 2 and word-parallel.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t length)
      : len_(length), words_((length + 63) / 64, 0) {}

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void xor_with(const BitVec& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }

  bool is_zero() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  std::size_t popcount() const;
  // popcount(this AND other) mod 2
  bool parity_and(const BitVec& o) const;
  std::size_t popcount_and(const BitVec& o) const;

  // index of first set bit, or size() if none
  std::size_t first_set() const;

  bool operator==(const BitVec& o) const {
    return len_ == o.len_ && words_ == o.words_;
  }

  const std::vector<uint64_t>& words() const { return words_; }

 private:
  std::size_t len_ = 0;
  std::vector<uint64_t> words_;
};

// Row-major matrix over GF(2); all rows share n_cols.
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t n_rows, std::size_t n_cols)
      : n_cols_(n_cols), rows_(n_rows, BitVec(n_cols)) {}

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return n_cols_; }

  BitVec& row(std::size_t i) { return rows_[i]; }
  const BitVec& row(std::size_t i) const { return rows_[i]; }

  void append_row(const BitVec& r) { rows_.push_back(r); }

  BinMatrix transposed() const;

 private:
  std::size_t n_cols_ = 0;
  std::vector<BitVec> rows_;
};

struct RrefResult {
  BinMatrix m;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form with full back-substitution.
RrefResult rref(const BinMatrix& m);

std::size_t rank(const BinMatrix& m);

// Basis of {v : m v = 0}; row count = n_cols - rank(m).
BinMatrix kernel_basis(const BinMatrix& m);

// True iff v lies in the rowspan of m; on success *combination (if non-null)
// receives a BitVec over row indices with xor of the selected rows == v.
bool in_rowspan(const BitVec& v, const BinMatrix& m,
                BitVec* combination = nullptr);

}  // namespace stabent
