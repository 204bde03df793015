#include "conesel/text_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "conesel/constraints.hpp"
#include "conesel/error.hpp"

namespace conesel {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

long long parse_integer(std::string_view token) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParseError("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of input while reading ") + what);
  return tok;
}

}  // namespace

ConstraintSet read_constraint_set(std::istream& in) {
  const long long m = parse_integer(next_token(in, "m"));
  const long long c = parse_integer(next_token(in, "c"));
  const long long n_hard = parse_integer(next_token(in, "n_hard"));
  if (m < 1 || c < 1 || n_hard < 0 || n_hard > c) {
    throw ParseError("bad header: m=" + std::to_string(m) + " c=" + std::to_string(c) +
                     " n_hard=" + std::to_string(n_hard));
  }
  Eigen::MatrixXd a(m, c);
  for (long long i = 0; i < m; ++i) {
    for (long long j = 0; j < c; ++j) a(i, j) = parse_number(next_token(in, "A"));
  }
  Eigen::VectorXd b(c);
  for (long long j = 0; j < c; ++j) b[j] = parse_number(next_token(in, "B"));
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after B: '" + extra + "'");
  return ConstraintSet(std::move(a), std::move(b), static_cast<int>(n_hard));
}

void write_constraint_set(std::ostream& out, const ConstraintSet& cs) {
  out << cs.input_dim() << ' ' << cs.size() << ' ' << cs.num_hard() << '\n';
  for (Eigen::Index i = 0; i < cs.input_dim(); ++i) {
    for (Eigen::Index j = 0; j < cs.size(); ++j) {
      out << (j ? " " : "") << format_number(cs.normals()(i, j));
    }
    out << '\n';
  }
  for (Eigen::Index j = 0; j < cs.size(); ++j) {
    out << (j ? " " : "") << format_number(cs.bounds()[j]);
  }
  out << '\n';
}

}  // namespace conesel
