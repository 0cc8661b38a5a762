#include "skewfactor/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "skewfactor/permutations.hpp"

namespace skewfactor {

namespace {

struct Entry {
  index_t i, j;
  double v;
};

struct Coordinate {
  std::string symmetry;
  index_t rows = 0, cols = 0;
  std::vector<Entry> entries;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Coordinate parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty Matrix Market stream");
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
    throw IoError("expected a coordinate Matrix Market header");
  if (lower(field) != "real") throw IoError("only real fields are supported");
  Coordinate c;
  c.symmetry = lower(symmetry);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    break;
  }
  std::istringstream ss(line);
  long long r = -1, k = -1, nnz = -1;
  if (!(ss >> r >> k >> nnz) || r < 0 || k < 0 || nnz < 0) throw IoError("bad size line");
  c.rows = r;
  c.cols = k;
  for (long long e = 0; e < nnz; ++e) {
    if (!std::getline(in, line)) throw IoError("missing entries");
    if (line.empty() || line[0] == '%') {
      --e;
      continue;
    }
    std::istringstream es(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(es >> i >> j >> v)) throw IoError("bad entry line: " + line);
    if (i < 1 || j < 1 || i > r || j > k) throw IoError("entry index out of range");
    c.entries.push_back({static_cast<index_t>(i - 1), static_cast<index_t>(j - 1), v});
  }
  return c;
}

Coordinate parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse(in);
}

void check_skew(const Coordinate& c) {
  if (c.symmetry != "skew-symmetric") throw IoError("expected skew-symmetric symmetry");
  if (c.rows != c.cols) throw IoError("skew-symmetric matrix must be square");
  for (const auto& e : c.entries)
    if (e.i <= e.j) throw IoError("skew-symmetric file may list only entries below the diagonal");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void finish(std::ostream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

DenseSkewMatrix read_matrix_market(std::istream& in) {
  const Coordinate c = parse(in);
  check_skew(c);
  DenseSkewMatrix X(c.rows);
  for (const auto& e : c.entries) X.set_lower(e.i, e.j, e.v);
  return X;
}

DenseSkewMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_matrix_market(in);
}

void write_matrix_market(const DenseSkewMatrix& X, std::ostream& out) {
  const index_t m = X.order();
  auto A = X.raw();
  std::vector<Entry> nz;
  for (index_t j = 0; j < m; ++j)
    for (index_t i = j + 1; i < m; ++i)
      if (A(i, j) != 0.0) nz.push_back({i, j, A(i, j)});
  out << "%%MatrixMarket matrix coordinate real skew-symmetric\n";
  out << m << ' ' << m << ' ' << nz.size() << '\n';
  for (const auto& e : nz) out << e.i + 1 << ' ' << e.j + 1 << ' ' << fmt(e.v) << '\n';
}

void write_matrix_market(const DenseSkewMatrix& X, const std::string& path) {
  auto out = open_out(path);
  write_matrix_market(X, out);
  finish(out, path);
}

SkewTridiagonal read_tridiagonal(const std::string& path) {
  const Coordinate c = parse_file(path);
  check_skew(c);
  SkewTridiagonal T(c.rows);
  for (const auto& e : c.entries) {
    if (e.i != e.j + 1) throw IoError("tridiagonal file may list only subdiagonal entries");
    T.sub[static_cast<std::size_t>(e.j)] = e.v;
  }
  return T;
}

void write_tridiagonal(const SkewTridiagonal& T, const std::string& path) {
  DenseSkewMatrix X(T.order);
  for (index_t i = 0; i + 1 < T.order; ++i) X.set_lower(i + 1, i, T.sub[static_cast<std::size_t>(i)]);
  write_matrix_market(X, path);
}

UnitLowerTriangular read_unit_lower(const std::string& path) {
  const Coordinate c = parse_file(path);
  if (c.symmetry != "general") throw IoError("expected a general coordinate file for L");
  if (c.rows != c.cols) throw IoError("L must be square");
  UnitLowerTriangular L(c.rows);
  for (const auto& e : c.entries) {
    if (e.i <= e.j) throw IoError("L file may list only entries below the diagonal");
    L.set(e.i, e.j, e.v);
  }
  return L;
}

void write_unit_lower(const UnitLowerTriangular& L, const std::string& path) {
  const index_t m = L.order();
  auto S = L.strict();
  std::vector<Entry> nz;
  for (index_t j = 0; j < m; ++j)
    for (index_t i = j + 1; i < m; ++i)
      if (S(i, j) != 0.0) nz.push_back({i, j, S(i, j)});
  auto out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m << ' ' << m << ' ' << nz.size() << '\n';
  for (const auto& e : nz) out << e.i + 1 << ' ' << e.j + 1 << ' ' << fmt(e.v) << '\n';
  finish(out, path);
}

PermutationVector read_pivots(const std::string& path, index_t window) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  PermutationVector p;
  p.window = window;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw IoError("bad pivot token: " + tok);
    }
    if (used != tok.size()) throw IoError("bad pivot token: " + tok);
    p.pivots.push_back(static_cast<index_t>(v));
  }
  return p;
}

void write_pivots(const PermutationVector& p, const std::string& path) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < p.pivots.size(); ++i) out << (i ? " " : "") << p.pivots[i];
  out << '\n';
  finish(out, path);
}

}  // namespace skewfactor
