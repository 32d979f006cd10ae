#include "hyperham/hypergraph.hpp"

#include "hyperham/errors.hpp"
#include "hyperham/rational.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperham {

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0) throw DomainError("negative vertex " + std::to_string(members_[i]));
    if (i > 0 && members_[i] == members_[i - 1]) {
      throw DomainError("repeated vertex " + std::to_string(members_[i]));
    }
  }
}

VertexSet VertexSet::from_mask(Mask mask) {
  VertexSet s;
  s.members_.reserve(static_cast<std::size_t>(popcount(mask)));
  while (mask) {
    s.members_.push_back(__builtin_ctzll(mask));
    mask &= mask - 1;
  }
  return s;
}

VertexSet VertexSet::from_sorted(std::vector<Vertex> members) {
  VertexSet s;
  s.members_ = std::move(members);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::contains_all(const VertexSet& other) const {
  return std::includes(members_.begin(), members_.end(), other.members_.begin(),
                       other.members_.end());
}

Mask VertexSet::mask() const {
  Mask m = 0;
  for (Vertex v : members_) {
    if (v >= kMaskVertices) throw DomainError("vertex " + std::to_string(v) + " exceeds mask width");
    m |= bit(v);
  }
  return m;
}

std::string VertexSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Vertex v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

bool for_each_subset(std::span<const Vertex> pool, int r,
                     const std::function<bool(const std::vector<Vertex>&)>& f) {
  const int m = static_cast<int>(pool.size());
  if (r < 0 || r > m) return true;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::vector<Vertex> subset(static_cast<std::size_t>(r));
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = pool[idx[i]];
    if (!f(subset)) return false;
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool for_each_combination(int n, int r, const std::function<bool(const std::vector<Vertex>&)>& f) {
  std::vector<Vertex> pool(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) pool[i] = i;
  return for_each_subset(pool, r, f);
}

Hypergraph::Hypergraph(int k, int n, std::vector<VertexSet> edges)
    : k_(k), n_(n), edges_(std::move(edges)) {
  if (k < 1) throw DomainError("uniformity must be at least 1");
  if (n < 0) throw DomainError("vertex count must be non-negative");
  for (const auto& e : edges_) {
    if (static_cast<int>(e.size()) != k) {
      throw DomainError("edge " + e.to_string() + " does not have " + std::to_string(k) + " vertices");
    }
    if (e.members().back() >= n) {
      throw DomainError("edge " + e.to_string() + " has a vertex outside [0," + std::to_string(n) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i] == edges_[i - 1]) throw DomainError("duplicate edge " + edges_[i].to_string());
  }
  incidence_.assign(static_cast<std::size_t>(n), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Vertex v : edges_[i]) incidence_[v].push_back(i);
  }
  if (has_masks()) {
    masks_.reserve(edges_.size());
    mask_set_.reserve(edges_.size() * 2);
    for (const auto& e : edges_) {
      masks_.push_back(e.mask());
      mask_set_.insert(masks_.back());
    }
  }
}

bool Hypergraph::has_edge(const VertexSet& e) const {
  if (static_cast<int>(e.size()) != k_) return false;
  if (has_masks()) {
    if (!e.empty() && e.members().back() >= n_) return false;
    return mask_set_.count(e.mask()) > 0;
  }
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Hypergraph::has_edge(Mask e) const { return mask_set_.count(e) > 0; }

Mask Hypergraph::all_vertices() const {
  return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
}

namespace {

void check_subset(const Hypergraph& h, const VertexSet& s) {
  const int d = static_cast<int>(s.size());
  if (d < 1 || d > h.k() - 1) {
    throw ArityError("set size " + std::to_string(d) + " outside [1," + std::to_string(h.k() - 1) + "]");
  }
  for (Vertex v : s) {
    if (v >= h.n()) throw DomainError("vertex " + std::to_string(v) + " outside [0," + std::to_string(h.n()) + ")");
  }
}

// Pascal table C(i, j) for i <= n, j <= r.
std::vector<std::vector<std::uint64_t>> pascal(int n, int r) {
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(n + 1),
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(r + 1), 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= std::min(i, r); ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c;
}

}  // namespace

std::uint64_t degree(const Hypergraph& h, const VertexSet& s) {
  check_subset(h, s);
  Vertex pivot = s[0];
  for (Vertex v : s) {
    if (h.incident(v).size() < h.incident(pivot).size()) pivot = v;
  }
  std::uint64_t count = 0;
  if (h.has_masks()) {
    const Mask sm = s.mask();
    for (std::size_t i : h.incident(pivot)) count += (h.edge_masks()[i] & sm) == sm;
  } else {
    for (std::size_t i : h.incident(pivot)) count += h.edges()[i].contains_all(s);
  }
  return count;
}

std::uint64_t colex_rank(const VertexSet& s) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < s.size(); ++i) rank += small_binomial(s[i], static_cast<int>(i + 1));
  return rank;
}

VertexSet colex_unrank(std::uint64_t rank, int r) {
  std::vector<Vertex> out(static_cast<std::size_t>(r));
  for (int i = r; i >= 1; --i) {
    Vertex v = i - 1;
    while (small_binomial(v + 1, i) <= rank) ++v;
    out[i - 1] = v;
    rank -= small_binomial(v, i);
  }
  return VertexSet::from_sorted(std::move(out));
}

std::vector<std::uint64_t> degree_table(const Hypergraph& h, int d) {
  if (d < 1 || d > h.k() - 1) {
    throw ArityError("d = " + std::to_string(d) + " outside [1," + std::to_string(h.k() - 1) + "]");
  }
  if (h.n() < d) throw DomainError("fewer than d vertices");
  const std::uint64_t sets = small_binomial(h.n(), d);
  if (sets > (std::uint64_t{1} << 28)) throw DomainError("too many d-sets to tabulate");
  const auto c = pascal(h.n(), d);
  std::vector<std::uint64_t> table(sets, 0);
  std::vector<int> idx(static_cast<std::size_t>(d));
  const int k = h.k();
  for (const auto& e : h.edges()) {
    // every d-subset of the edge
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      std::uint64_t rank = 0;
      for (int i = 0; i < d; ++i) rank += c[e[idx[i]]][i + 1];
      ++table[rank];
      int i = d - 1;
      while (i >= 0 && idx[i] == k - d + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return table;
}

std::uint64_t min_degree(const Hypergraph& h, int d) {
  const auto table = degree_table(h, d);
  return *std::min_element(table.begin(), table.end());
}

Hypergraph link(const Hypergraph& h, const VertexSet& s) {
  check_subset(h, s);
  std::vector<VertexSet> out;
  for (std::size_t i : h.incident(s[0])) {
    const auto& e = h.edges()[i];
    if (e.contains_all(s)) out.push_back(set_difference(e, s));
  }
  return Hypergraph(h.k() - static_cast<int>(s.size()), h.n(), std::move(out));
}

Hypergraph induced(const Hypergraph& h, const VertexSet& keep) {
  std::vector<int> relabel(static_cast<std::size_t>(h.n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<int>(i);
  std::vector<VertexSet> out;
  for (const auto& e : h.edges()) {
    std::vector<Vertex> mapped;
    for (Vertex v : e) {
      if (relabel[v] < 0) break;
      mapped.push_back(relabel[v]);
    }
    if (mapped.size() == e.size()) out.push_back(VertexSet::from_sorted(std::move(mapped)));
  }
  return Hypergraph(h.k(), static_cast<int>(keep.size()), std::move(out));
}

Hypergraph complete_graph(int k, int n) {
  std::vector<VertexSet> edges;
  for_each_combination(n, k, [&](const std::vector<Vertex>& c) {
    edges.push_back(VertexSet::from_sorted(c));
    return true;
  });
  return Hypergraph(k, n, std::move(edges));
}

namespace {

bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line, int line_no) {
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string token;
  while (ss >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected an integer, got '" + token + "'");
    }
    if (used != token.size()) throw ParseError(line_no, "expected an integer, got '" + token + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace

Hypergraph read_hg(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) throw ParseError(1, "missing header 'k n m'");
  const auto header = parse_ints(line, line_no);
  if (header.size() != 3) throw ParseError(line_no, "header must be 'k n m'");
  const long long k = header[0], n = header[1], m = header[2];
  if (k < 1) throw ParseError(line_no, "uniformity k must be positive");
  if (n < 0 || n > (1 << 24)) throw ParseError(line_no, "vertex count out of range");
  if (m < 0) throw ParseError(line_no, "edge count must be non-negative");
  std::vector<VertexSet> edges;
  edges.reserve(static_cast<std::size_t>(std::min<long long>(m, 1 << 22)));
  std::unordered_set<VertexSet, VertexSetHash> seen;
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    const auto values = parse_ints(line, line_no);
    if (static_cast<long long>(values.size()) != k) {
      throw ParseError(line_no, "edge has " + std::to_string(values.size()) + " vertices, expected " +
                                    std::to_string(k));
    }
    std::vector<Vertex> members;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (values[j] < 0 || values[j] >= n) {
        throw ParseError(line_no, "vertex " + std::to_string(values[j]) + " outside [0," + std::to_string(n) + ")");
      }
      if (j > 0 && values[j] <= values[j - 1]) throw ParseError(line_no, "vertices must be strictly increasing");
      members.push_back(static_cast<Vertex>(values[j]));
    }
    auto e = VertexSet::from_sorted(std::move(members));
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge " + e.to_string());
    edges.push_back(std::move(e));
  }
  if (next_content_line(in, line, line_no)) throw ParseError(line_no, "unexpected content after the last edge");
  return Hypergraph(static_cast<int>(k), static_cast<int>(n), std::move(edges));
}

void write_hg(std::ostream& out, const Hypergraph& h) {
  out << h.k() << ' ' << h.n() << ' ' << h.edge_count() << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out << ' ';
      out << e[i];
    }
    out << '\n';
  }
}

Hypergraph load_hg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_hg(in);
}

void save_hg(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  write_hg(out, h);
}

}  // namespace hyperham
