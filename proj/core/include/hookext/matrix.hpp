#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hookext/int.hpp"

namespace hookext {

/// Dense matrix over exact integers.  Rows and columns are 0-indexed here;
/// the block-structured views used by the presentation and the pipeline
/// translate 1-indexed block coordinates on top of this.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }
  const Int& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0) return false;
    return true;
  }
  bool col_is_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (at(i, j) != 0) return false;
    return true;
  }

  // Elementary operations (in place).
  void row_swap(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(i, j), at(k, j));
  }
  void col_swap(std::size_t j, std::size_t l) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, j), at(i, l));
  }
  void row_scale(std::size_t i, const Int& c) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) *= c;
  }
  void col_scale(std::size_t j, const Int& c) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) *= c;
  }
  /// row i += c * row k
  void row_addmul(std::size_t i, std::size_t k, const Int& c) {
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) += c * at(k, j);
  }
  /// col j += c * col l
  void col_addmul(std::size_t j, std::size_t l, const Int& c) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) += c * at(i, l);
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  IntMatrix mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }

  IntMatrix submatrix(const std::vector<std::size_t>& ris,
                      const std::vector<std::size_t>& cis) const {
    IntMatrix r(ris.size(), cis.size());
    for (std::size_t i = 0; i < ris.size(); ++i)
      for (std::size_t j = 0; j < cis.size(); ++j) r.at(i, j) = at(ris[i], cis[j]);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += at(i, j).str();
      }
      s += "]\n";
    }
    return s;
  }

  /// FNV-1a hash of the shape and decimal entries; stable across runs.
  std::uint64_t content_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto eat = [&h](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
      }
      h ^= 0x1f;
      h *= 1099511628211ull;
    };
    eat(std::to_string(rows_));
    eat(std::to_string(cols_));
    for (const auto& x : data_) eat(x.str());
    return h;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

}  // namespace hookext
