#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgt/bits.hpp"

namespace sgt {

/// Result vector of t tests.
using Outcome = BitVector;

/// Binary t x n measurement matrix: rows are tests, columns are item
/// signatures. Bits are stored twice, packed row-major and packed
/// column-major, so both axes support word-level OR/AND/popcount.
class CodeMatrix {
 public:
  class Builder {
   public:
    Builder(std::size_t t, std::size_t n);
    Builder& set(std::size_t row, std::size_t col, bool value = true);
    bool test(std::size_t row, std::size_t col) const;
    std::size_t tests() const noexcept { return t_; }
    std::size_t items() const noexcept { return n_; }
    CodeMatrix build() &&;

   private:
    std::size_t t_;
    std::size_t n_;
    std::vector<Word> cols_;
  };

  CodeMatrix() = default;

  static CodeMatrix identity(std::size_t n);
  /// Rows given as strings over {0,1}; handy for small literals in tests.
  static CodeMatrix from_rows(std::span<const std::string> rows);
  static CodeMatrix from_rows(std::initializer_list<std::string> rows) {
    const std::vector<std::string> v(rows);
    return from_rows(v);
  }

  std::size_t tests() const noexcept { return t_; }
  std::size_t items() const noexcept { return n_; }

  bool test(std::size_t row, std::size_t col) const;

  std::span<const Word> column_words(std::size_t col) const;
  std::span<const Word> row_words(std::size_t row) const;
  BitVector column(std::size_t col) const { return BitVector(t_, column_words(col)); }

  std::size_t column_weight(std::size_t col) const { return popcount(column_words(col)); }
  std::size_t row_weight(std::size_t row) const { return popcount(row_words(row)); }
  std::vector<std::size_t> column_weights() const;
  std::vector<std::size_t> row_weights() const;
  std::size_t total_weight() const noexcept;

  /// Submatrix made of the given columns, in the given order.
  CodeMatrix select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const CodeMatrix& a, const CodeMatrix& b) {
    return a.t_ == b.t_ && a.n_ == b.n_ && a.cols_ == b.cols_;
  }

 private:
  std::size_t t_ = 0;
  std::size_t n_ = 0;
  std::size_t col_stride_ = 0;  // words per column
  std::size_t row_stride_ = 0;  // words per row
  std::vector<Word> cols_;
  std::vector<Word> rows_;
};

/// Rows where column j is 1, ascending.
std::vector<std::size_t> col_support(const CodeMatrix& m, std::size_t j);

/// Boolean OR of the selected columns (the noiseless test outcome).
Outcome or_columns(const CodeMatrix& m, std::span<const std::size_t> cols);

/// |supp(M_i) \ U_{j in S} supp(M_j)|. Throws SelfInSet when i is in S.
std::size_t residual_support(const CodeMatrix& m, std::size_t i, std::span<const std::size_t> cols);

// ---------------------------------------------------------------------------
// GTM1 text format:
//   GTM1 <t> <n>
//   #key=value          (optional comment lines, any number)
//   <t lines of n characters from {0,1}>

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct GtmFile {
  CodeMatrix matrix;
  Metadata metadata;

  /// Value for key, or empty string.
  std::string get(const std::string& key) const;
};

void write_gtm(std::ostream& out, const CodeMatrix& m, const Metadata& metadata = {});
GtmFile read_gtm(std::istream& in);
void write_gtm_file(const std::filesystem::path& path, const CodeMatrix& m, const Metadata& metadata = {});
GtmFile read_gtm_file(const std::filesystem::path& path);

/// Outcome files hold one line of t characters from {0,1}.
void write_outcome(std::ostream& out, const Outcome& y);
Outcome read_outcome(std::istream& in);
Outcome read_outcome_file(const std::filesystem::path& path);

}  // namespace sgt
