#include "sgt/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "sgt/error.hpp"

namespace sgt {

namespace {

void check_column(const CodeMatrix& m, std::size_t j) {
  if (j >= m.items())
    throw Error(Errc::IndexOutOfRange,
                "column " + std::to_string(j) + " outside [0, " + std::to_string(m.items()) + ")");
}

bool parse_size(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

CodeMatrix::Builder::Builder(std::size_t t, std::size_t n) : t_(t), n_(n) {
  if (t == 0 || n == 0) throw Error(Errc::InvalidArgument, "matrix dimensions must be positive");
  cols_.assign(words_for(t) * n, 0);
}

CodeMatrix::Builder& CodeMatrix::Builder::set(std::size_t row, std::size_t col, bool value) {
  if (row >= t_ || col >= n_) throw Error(Errc::IndexOutOfRange, "bit outside matrix");
  Word& w = cols_[col * words_for(t_) + row / kWordBits];
  const Word mask = Word{1} << (row % kWordBits);
  w = value ? (w | mask) : (w & ~mask);
  return *this;
}

bool CodeMatrix::Builder::test(std::size_t row, std::size_t col) const {
  if (row >= t_ || col >= n_) throw Error(Errc::IndexOutOfRange, "bit outside matrix");
  return (cols_[col * words_for(t_) + row / kWordBits] >> (row % kWordBits)) & 1u;
}

CodeMatrix CodeMatrix::Builder::build() && {
  CodeMatrix m;
  m.t_ = t_;
  m.n_ = n_;
  m.col_stride_ = words_for(t_);
  m.row_stride_ = words_for(n_);
  m.cols_ = std::move(cols_);
  m.rows_.assign(m.row_stride_ * t_, 0);
  for (std::size_t c = 0; c < n_; ++c) {
    for_each_set_bit(m.column_words(c), [&](std::size_t r) {
      m.rows_[r * m.row_stride_ + c / kWordBits] |= Word{1} << (c % kWordBits);
    });
  }
  return m;
}

CodeMatrix CodeMatrix::identity(std::size_t n) {
  Builder b(n, n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, i);
  return std::move(b).build();
}

CodeMatrix CodeMatrix::from_rows(std::span<const std::string> rows) {
  if (rows.empty()) throw Error(Errc::InvalidArgument, "no rows");
  Builder b(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != b.items()) throw Error(Errc::RaggedRow, "row " + std::to_string(r));
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == '1')
        b.set(r, c);
      else if (rows[r][c] != '0')
        throw Error(Errc::InvalidCharacter, "row " + std::to_string(r));
    }
  }
  return std::move(b).build();
}

bool CodeMatrix::test(std::size_t row, std::size_t col) const {
  if (row >= t_ || col >= n_) throw Error(Errc::IndexOutOfRange, "bit outside matrix");
  return (cols_[col * col_stride_ + row / kWordBits] >> (row % kWordBits)) & 1u;
}

std::span<const Word> CodeMatrix::column_words(std::size_t col) const {
  if (col >= n_) throw Error(Errc::IndexOutOfRange, "column " + std::to_string(col));
  return {cols_.data() + col * col_stride_, col_stride_};
}

std::span<const Word> CodeMatrix::row_words(std::size_t row) const {
  if (row >= t_) throw Error(Errc::IndexOutOfRange, "row " + std::to_string(row));
  return {rows_.data() + row * row_stride_, row_stride_};
}

std::vector<std::size_t> CodeMatrix::column_weights() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t c = 0; c < n_; ++c) out[c] = column_weight(c);
  return out;
}

std::vector<std::size_t> CodeMatrix::row_weights() const {
  std::vector<std::size_t> out(t_);
  for (std::size_t r = 0; r < t_; ++r) out[r] = row_weight(r);
  return out;
}

std::size_t CodeMatrix::total_weight() const noexcept { return popcount(cols_); }

CodeMatrix CodeMatrix::select_columns(std::span<const std::size_t> cols) const {
  Builder b(t_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for_each_set_bit(column_words(cols[k]), [&](std::size_t r) { b.set(r, k); });
  return std::move(b).build();
}

std::vector<std::size_t> col_support(const CodeMatrix& m, std::size_t j) {
  check_column(m, j);
  std::vector<std::size_t> rows;
  for_each_set_bit(m.column_words(j), [&](std::size_t r) { rows.push_back(r); });
  return rows;
}

Outcome or_columns(const CodeMatrix& m, std::span<const std::size_t> cols) {
  Outcome y(m.tests());
  auto words = y.words();
  for (std::size_t j : cols) {
    check_column(m, j);
    const auto col = m.column_words(j);
    for (std::size_t w = 0; w < words.size(); ++w) words[w] |= col[w];
  }
  return y;
}

std::size_t residual_support(const CodeMatrix& m, std::size_t i, std::span<const std::size_t> cols) {
  check_column(m, i);
  if (std::find(cols.begin(), cols.end(), i) != cols.end())
    throw Error(Errc::SelfInSet, "column " + std::to_string(i) + " is in the covering set");
  const Outcome cover = or_columns(m, cols);
  return popcount_andnot(m.column_words(i), cover.words());
}

std::string GtmFile::get(const std::string& key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return {};
}

void write_gtm(std::ostream& out, const CodeMatrix& m, const Metadata& metadata) {
  out << "GTM1 " << m.tests() << ' ' << m.items() << '\n';
  for (const auto& [key, value] : metadata) out << '#' << key << '=' << value << '\n';
  std::string line(m.items(), '0');
  for (std::size_t r = 0; r < m.tests(); ++r) {
    std::fill(line.begin(), line.end(), '0');
    for_each_set_bit(m.row_words(r), [&](std::size_t c) { line[c] = '1'; });
    out << line << '\n';
  }
}

GtmFile read_gtm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::MalformedHeader, "empty input");
  std::size_t t = 0;
  std::size_t n = 0;
  {
    const std::string_view header(line);
    const auto sp1 = header.find(' ');
    const auto sp2 = sp1 == std::string_view::npos ? sp1 : header.find(' ', sp1 + 1);
    if (header.substr(0, sp1) != "GTM1" || sp2 == std::string_view::npos ||
        !parse_size(header.substr(sp1 + 1, sp2 - sp1 - 1), t) || !parse_size(header.substr(sp2 + 1), n) ||
        t == 0 || n == 0)
      throw Error(Errc::MalformedHeader, "expected 'GTM1 <t> <n>', got '" + line + "'");
  }

  GtmFile file;
  CodeMatrix::Builder builder(t, n);
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (row == 0 && !line.empty() && line.front() == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) file.metadata.emplace_back(line.substr(1, eq - 1), line.substr(eq + 1));
      continue;
    }
    if (row == t) {
      if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
      throw Error(Errc::RowCountMismatch, "more than " + std::to_string(t) + " rows");
    }
    for (std::size_t c = 0; c < line.size(); ++c) {
      const char ch = line[c];
      if (ch != '0' && ch != '1')
        throw Error(Errc::InvalidCharacter, "line " + std::to_string(line_no) + ", column " + std::to_string(c));
    }
    if (line.size() != n)
      throw Error(Errc::RaggedRow, "line " + std::to_string(line_no) + " has " + std::to_string(line.size()) +
                                       " characters, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c)
      if (line[c] == '1') builder.set(row, c);
    ++row;
  }
  if (row != t)
    throw Error(Errc::RowCountMismatch, "expected " + std::to_string(t) + " rows, found " + std::to_string(row));
  file.matrix = std::move(builder).build();
  return file;
}

void write_gtm_file(const std::filesystem::path& path, const CodeMatrix& m, const Metadata& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open " + path.string() + " for writing");
  write_gtm(out, m, metadata);
}

GtmFile read_gtm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  return read_gtm(in);
}

void write_outcome(std::ostream& out, const Outcome& y) { out << y.to_string() << '\n'; }

Outcome read_outcome(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw Error(Errc::MalformedHeader, "empty outcome");
  return Outcome::from_string(line);
}

Outcome read_outcome_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  return read_outcome(in);
}

}  // namespace sgt
