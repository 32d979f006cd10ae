#include "hyperham/absorbing.hpp"

#include "hyperham/errors.hpp"
#include "hyperham/random.hpp"
#include "hyperham/tilings.hpp"
#include "sequence_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace hyperham {

namespace {

struct StopEnumeration {};
struct AbsorbBudget {};

Validation failure(std::string what) {
  Validation v;
  v.valid = false;
  v.violation = std::move(what);
  return v;
}

Mask mask_of(const std::vector<Vertex>& vs) {
  Mask m = 0;
  for (Vertex v : vs) m |= bit(v);
  return m;
}

std::vector<Vertex> members_of(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
  return out;
}

void check_regime(const Hypergraph& h, int ell) {
  if (ell < 1 || 2 * ell >= h.k()) throw DomainError("absorbers need 1 <= ell < k/2");
  if (!h.has_masks()) throw DomainError("absorbing search supports at most 64 vertices");
}

// Q windows (template labels) then P windows.
detail::Layout gadget_layout(const GadgetCertificate& cert) {
  const int k = cert.k;
  const int s = k - cert.ell;
  detail::Layout layout;
  layout.positions = static_cast<int>(cert.q.order.size());
  const int qw = (layout.positions - k) / s + 1;
  for (int j = 0; j < qw; ++j) {
    layout.windows.emplace_back(cert.q.order.begin() + j * s, cert.q.order.begin() + j * s + k);
  }
  const int xsize = static_cast<int>(cert.p.order.size());
  const int pw = (xsize - k) / s + 1;
  for (int j = 0; j < pw; ++j) {
    layout.windows.emplace_back(cert.p.order.begin() + j * s, cert.p.order.begin() + j * s + k);
  }
  layout.preassigned.assign(static_cast<std::size_t>(layout.positions), -1);
  return layout;
}

std::vector<Vertex> map_labels(const std::vector<Vertex>& labels, const std::vector<Vertex>& emb) {
  std::vector<Vertex> out;
  out.reserve(labels.size());
  for (Vertex l : labels) out.push_back(emb[l]);
  return out;
}

// Per S' role, the Q windows (template labels) that contain it.
std::vector<std::vector<std::vector<Vertex>>> role_windows(const GadgetCertificate& cert) {
  const int k = cert.k;
  const int s = k - cert.ell;
  const int xsize = static_cast<int>(cert.p.order.size());
  const int total = static_cast<int>(cert.q.order.size());
  std::vector<std::vector<std::vector<Vertex>>> out(static_cast<std::size_t>(s));
  for (int j = 0; j * s + k <= total; ++j) {
    std::vector<Vertex> w(cert.q.order.begin() + j * s, cert.q.order.begin() + j * s + k);
    for (Vertex l : w) {
      if (l >= xsize) out[l - xsize].push_back(w);
    }
  }
  return out;
}

// v can sit in the role whose Q windows are `windows`, X embedded as `x`.
bool role_accepts(const Hypergraph& h, const std::vector<std::vector<Vertex>>& windows, int xsize,
                  const std::vector<Vertex>& x, Vertex v) {
  for (const auto& w : windows) {
    Mask m = 0;
    for (Vertex l : w) m |= bit(l >= xsize ? v : x[l]);
    if (popcount(m) != h.k() || !h.has_edge(m)) return false;
  }
  return true;
}

struct Swapper {
  std::vector<Vertex> with_w;
  std::vector<Vertex> with_v;
  Mask vertices = 0;  // including w
};

// Length-two ell-paths [E1 A D B E2] through w with w in D, such that v can
// take w's slot; every other vertex avoids `used`.
std::vector<Swapper> swappers(const Hypergraph& h, int ell, Vertex v, Vertex w, Mask used) {
  const int k = h.k();
  const auto& masks = h.edge_masks();
  const auto& inc = h.incident(w);
  std::vector<Swapper> out;
  const Mask wb = bit(w);
  for (std::size_t a = 0; a < inc.size(); ++a) {
    const Mask e1 = masks[inc[a]];
    if ((e1 & used) != wb || (e1 & bit(v))) continue;
    if (!h.has_edge((e1 & ~wb) | bit(v))) continue;
    for (std::size_t b = a + 1; b < inc.size(); ++b) {
      const Mask e2 = masks[inc[b]];
      if ((e2 & used) != wb || (e2 & bit(v))) continue;
      if (popcount(e1 & e2) != ell) continue;
      if (!h.has_edge((e2 & ~wb) | bit(v))) continue;
      const auto d = members_of(e1 & e2);
      const auto left = members_of(e1 & ~e2);
      const auto right = members_of(e2 & ~e1);
      std::vector<Vertex> order;
      order.insert(order.end(), left.begin(), left.begin() + ell);
      order.insert(order.end(), left.begin() + ell, left.end());
      order.insert(order.end(), d.begin(), d.end());
      order.insert(order.end(), right.begin(), right.begin() + (k - 2 * ell));
      order.insert(order.end(), right.begin() + (k - 2 * ell), right.end());
      Swapper sw;
      sw.with_w = order;
      std::replace(order.begin(), order.end(), w, v);
      sw.with_v = std::move(order);
      sw.vertices = e1 | e2;
      out.push_back(std::move(sw));
    }
  }
  return out;
}

std::vector<int> index_of(const std::vector<std::vector<Vertex>>& parts, const std::vector<Vertex>& vs) {
  return index_vector(parts, VertexSet(vs));
}

AbsorbDescriptor make_descriptor(const Hypergraph& h, int ell) {
  const int n = h.n();
  const int k = h.k();
  AbsorbDescriptor d;
  d.parts.assign(2, {});
  for (Vertex v = 0; v < n; ++v) d.parts[v < n / 2 ? 0 : 1].push_back(v);
  if (d.parts[0].empty() || d.parts[1].empty()) return d;
  const PartitionIndex idx = robust_edge_vectors(h, d.parts, Rational(0));
  for (const auto& [vec, count] : idx.census) {
    if (vec.size() != 2 || vec[0] < 1 || vec[0] > k - 1) continue;
    if (count > d.a_census) {
      d.a_census = count;
      d.a = vec[0];
      d.lattice = true;
    }
  }
  if (!d.lattice) return d;
  const int s = k - ell;
  d.m = 2 * d.a <= k ? d.a : d.a - ell + 1;
  d.base_first = {d.m, s - d.m};
  d.base_second = {d.m - 1, s - d.m + 1};
  return d;
}

Hypergraph relabel(const Hypergraph& h, const std::vector<Vertex>& perm) {
  std::vector<VertexSet> edges;
  edges.reserve(h.edge_count());
  for (const auto& e : h.edges()) {
    std::vector<Vertex> vs;
    for (Vertex v : e) vs.push_back(perm[v]);
    edges.emplace_back(std::move(vs));
  }
  return Hypergraph(h.k(), h.n(), std::move(edges));
}

std::vector<Vertex> map_vertices(const std::vector<Vertex>& vs, const std::vector<Vertex>& inv) {
  std::vector<Vertex> out;
  out.reserve(vs.size());
  for (Vertex v : vs) out.push_back(inv[v]);
  return out;
}

std::vector<Vertex> map_sorted(const std::vector<Vertex>& vs, const std::vector<Vertex>& inv) {
  auto out = map_vertices(vs, inv);
  std::sort(out.begin(), out.end());
  return out;
}

EllPath map_path(const EllPath& p, const std::vector<Vertex>& inv) { return EllPath{p.k, p.ell, map_vertices(p.order, inv)}; }

Absorber map_absorber(const Absorber& a, const std::vector<Vertex>& inv) {
  Absorber out;
  out.target = VertexSet(map_vertices(a.target.members(), inv));
  out.tuple = map_vertices(a.tuple, inv);
  for (const auto& p : a.without_target) out.without_target.push_back(map_path(p, inv));
  for (const auto& p : a.with_target) out.with_target.push_back(map_path(p, inv));
  return out;
}

}  // namespace

Validation check_absorber(const Hypergraph& h, const Absorber& a) {
  if (a.without_target.empty()) return failure("empty family");
  if (a.without_target.size() != a.with_target.size()) return failure("families have different sizes");
  std::vector<Vertex> before, after;
  for (std::size_t i = 0; i < a.without_target.size(); ++i) {
    const auto& p = a.without_target[i];
    const auto& q = a.with_target[i];
    const std::string tag = "path " + std::to_string(i + 1);
    if (auto v = validate_path(h, p); !v.valid) return failure(tag + " without target: " + v.violation);
    if (auto v = validate_path(h, q); !v.valid) return failure(tag + " with target: " + v.violation);
    if (p.begin_end() != q.begin_end() || p.end_end() != q.end_end()) return failure(tag + ": ordered ends differ");
    before.insert(before.end(), p.order.begin(), p.order.end());
    after.insert(after.end(), q.order.begin(), q.order.end());
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  if (std::adjacent_find(before.begin(), before.end()) != before.end()) return failure("paths without target share a vertex");
  if (std::adjacent_find(after.begin(), after.end()) != after.end()) return failure("paths with target share a vertex");
  for (Vertex v : a.target) {
    if (std::binary_search(before.begin(), before.end(), v)) return failure("target vertex already in the family");
  }
  std::vector<Vertex> expect = before;
  expect.insert(expect.end(), a.target.begin(), a.target.end());
  std::sort(expect.begin(), expect.end());
  if (expect != after) return failure("vertex sets do not differ by exactly the target");
  std::vector<Vertex> tuple = a.tuple;
  std::sort(tuple.begin(), tuple.end());
  if (tuple != before) return failure("tuple does not list the family's vertices");
  return {};
}

const Gadget& gadget_template(int k, int ell) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Gadget> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, ell});
  if (it != cache.end()) return it->second;
  auto res = search_gadget(k, ell, 0, 50'000'000);
  if (res.status != SearchStatus::found) {
    throw DomainError("no insertion gadget found for k=" + std::to_string(k) + ", ell=" + std::to_string(ell));
  }
  return cache.emplace(std::make_pair(k, ell), std::move(*res.gadget)).first->second;
}

std::vector<Absorber> find_absorbers(const Hypergraph& h, int ell, const VertexSet& target, std::size_t limit,
                                     std::uint64_t budget) {
  check_regime(h, ell);
  const int k = h.k();
  const int s = k - ell;
  if (static_cast<int>(target.size()) != s) throw ArityError("target must have k - ell vertices");
  for (Vertex v : target) {
    if (v >= h.n()) throw DomainError("target vertex out of range");
  }
  std::vector<Absorber> out;
  if (limit == 0) return out;
  const Gadget& g = gadget_template(k, ell);
  const auto& cert = g.cert;
  const detail::Layout layout = gadget_layout(cert);
  const int last = static_cast<int>(layout.windows.size()) - 1;
  const Mask tmask = target.mask();
  const std::vector<Vertex> tv = target.members();

  auto process = [&](const std::vector<Vertex>& emb) {
    std::vector<Vertex> w;
    for (Vertex l : cert.s_prime) w.push_back(emb[l]);
    const Mask amask = mask_of(emb);
    const EllPath p_form{k, ell, map_labels(cert.p.order, emb)};
    const EllPath q_form{k, ell, map_labels(cert.q.order, emb)};
    std::vector<int> perm(static_cast<std::size_t>(s));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<const Swapper*> chosen(static_cast<std::size_t>(s), nullptr);
      std::vector<std::vector<Swapper>> lists(static_cast<std::size_t>(s));
      auto rec = [&](auto&& self, int i, Mask used) -> void {
        if (i == s) {
          Absorber a;
          a.target = target;
          a.without_target.push_back(p_form);
          a.with_target.push_back(q_form);
          for (int j = 0; j < s; ++j) {
            a.without_target.push_back(EllPath{k, ell, chosen[j]->with_w});
            a.with_target.push_back(EllPath{k, ell, chosen[j]->with_v});
          }
          for (const auto& p : a.without_target) a.tuple.insert(a.tuple.end(), p.order.begin(), p.order.end());
          if (auto v = check_absorber(h, a); !v.valid) throw std::logic_error("emitted absorber fails the swap check: " + v.violation);
          out.push_back(std::move(a));
          if (out.size() >= limit) throw StopEnumeration{};
          return;
        }
        lists[i] = swappers(h, ell, tv[i], w[perm[i]], used);
        for (const auto& sw : lists[i]) {
          chosen[i] = &sw;
          self(self, i + 1, used | sw.vertices);
        }
      };
      rec(rec, 0, amask | tmask);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };

  detail::EngineOptions eo;
  eo.budget = budget;
  eo.cover_bound = false;
  eo.fail_first = true;
  eo.forbidden = tmask;
  eo.accept = [&](const std::vector<Vertex>& assignment, int window) {
    if (window != last) return true;
    process(assignment);
    return false;
  };
  try {
    detail::run_sequence_search(h, layout, eo);
  } catch (const StopEnumeration&) {
  }
  return out;
}

LatticeCheck lattice_check(const AbsorbDescriptor& d, int k, int ell, const VertexSet& x) {
  LatticeCheck c;
  const int s = k - ell;
  const long long size = static_cast<long long>(x.size());
  c.divisible = size % s == 0;
  c.fits = size / s + 4LL * d.reserve <= d.slots;
  if (!d.lattice || !c.divisible) return c;
  const auto iv = index_of(d.parts, x.members());
  const long long t = iv[0];
  const long long sets = size / s;
  c.x = t - static_cast<long long>(d.m - 1) * sets;
  c.y = static_cast<long long>(d.m) * sets - t;
  c.representable = c.x + 2LL * d.reserve >= 0 && c.y + 2LL * d.reserve >= 0;
  return c;
}

std::optional<Absorption> absorb(const Hypergraph& h, const AbsorbingPath& ap, const VertexSet& x, std::uint64_t budget,
                                 std::uint64_t seed, int restarts) {
  if (!h.has_masks()) throw DomainError("absorption supports at most 64 vertices");
  const int k = h.k();
  const int ell = ap.base.ell;
  const int s = k - ell;
  const Mask inside = mask_of(ap.path.order);
  for (Vertex v : x) {
    if (v >= h.n()) throw DomainError("vertex out of range");
    if (inside & bit(v)) throw DomainError("vertex " + std::to_string(v) + " already lies on the absorbing path");
  }
  std::vector<Vertex> load = ap.descriptor.reserved;
  load.insert(load.end(), x.begin(), x.end());
  std::sort(load.begin(), load.end());
  if (load.empty()) return Absorption{ap.base, {}, 0, 0};
  if (load.size() % static_cast<std::size_t>(s) != 0) throw DomainError("absorbed set size must be divisible by k - ell");
  const int sets = static_cast<int>(load.size()) / s;
  const int nslots = static_cast<int>(ap.slots.size());
  if (nslots == 0 || sets > nslots) return std::nullopt;

  const auto& cert = gadget_template(k, ell).cert;
  const int xsize = static_cast<int>(cert.p.order.size());
  const auto rwin = role_windows(cert);
  const auto& slots = ap.slots;
  auto accepts = [&](int sl, int r, Vertex v) { return role_accepts(h, rwin[r], xsize, slots[sl].x, v); };

  const auto& base = ap.base.order;
  const int npos = static_cast<int>(base.size());
  const int nwin = (npos - k) / s + 1;
  std::vector<Mask> win_mask(static_cast<std::size_t>(nwin));
  for (int j = 0; j < nwin; ++j) {
    win_mask[j] = mask_of(std::vector<Vertex>(base.begin() + j * s, base.begin() + j * s + k));
  }
  std::vector<int> pos_slot(static_cast<std::size_t>(npos), -1);
  std::vector<Mask> slot_mask(static_cast<std::size_t>(nslots));
  for (int sl = 0; sl < nslots; ++sl) {
    for (int i = 0; i < xsize; ++i) pos_slot[slots[sl].offset + i] = sl;
    slot_mask[sl] = mask_of(slots[sl].x);
  }
  struct SwapPos {
    int pos;
    int wlo;
    int whi;
    Mask seg;
  };
  std::vector<SwapPos> swap_pos;
  for (int p = 0; p < npos; ++p) {
    if (pos_slot[p] >= 0) continue;
    const int wlo = p < k ? 0 : (p - k + 1 + s - 1) / s;
    const int whi = std::min(nwin - 1, p / s);
    Mask seg = 0;
    for (int j = wlo; j <= whi; ++j) seg |= win_mask[j];
    swap_pos.push_back({p, wlo, whi, seg});
  }
  auto replace_ok = [&](const SwapPos& sp, Vertex v) {
    const Mask wb = bit(base[sp.pos]);
    for (int j = sp.wlo; j <= sp.whi; ++j) {
      if (!h.has_edge((win_mask[j] & ~wb) | bit(v))) return false;
    }
    return true;
  };

  struct Option {
    int slot;
    int role;
    int swap;  // index into swap_pos, -1 for direct
  };
  const int nload = static_cast<int>(load.size());
  std::vector<std::vector<Option>> options(static_cast<std::size_t>(nload));
  for (int i = 0; i < nload; ++i) {
    const Vertex v = load[i];
    for (int sl = 0; sl < nslots; ++sl) {
      for (int r = 0; r < s; ++r) {
        if (accepts(sl, r, v)) options[i].push_back({sl, r, -1});
      }
    }
    for (int q = 0; q < static_cast<int>(swap_pos.size()); ++q) {
      if (!replace_ok(swap_pos[q], v)) continue;
      const Vertex w = base[swap_pos[q].pos];
      for (int sl = 0; sl < nslots; ++sl) {
        if (swap_pos[q].seg & slot_mask[sl]) continue;
        for (int r = 0; r < s; ++r) {
          if (accepts(sl, r, w)) options[i].push_back({sl, r, q});
        }
      }
    }
  }

  std::vector<std::vector<Vertex>> filler;
  std::vector<int> fill_count;
  std::vector<char> pos_used, win_used;
  std::vector<Mask> seg_union;
  std::vector<int> choice;
  int opened = 0;
  std::uint64_t nodes = 0;
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> keys;
  bool shuffle_ties = false;
  SplitMix64 rng(seed);

  auto valid = [&](const Option& o) {
    if (filler[o.slot][o.role] >= 0) return false;
    if (fill_count[o.slot] == 0 && opened == sets) return false;
    if (o.swap >= 0) {
      const auto& sp = swap_pos[o.swap];
      if (pos_used[o.swap]) return false;
      for (int j = sp.wlo; j <= sp.whi; ++j) {
        if (win_used[j]) return false;
      }
      if (sp.seg & seg_union[o.slot]) return false;
    }
    return true;
  };
  auto apply = [&](int i, int oi, bool on) {
    const Option& o = options[i][oi];
    const int d = on ? 1 : -1;
    if (on) {
      if (fill_count[o.slot] == 0) ++opened;
    }
    fill_count[o.slot] += d;
    if (!on && fill_count[o.slot] == 0) --opened;
    filler[o.slot][o.role] = on ? (o.swap >= 0 ? base[swap_pos[o.swap].pos] : load[i]) : -1;
    if (o.swap >= 0) {
      const auto& sp = swap_pos[o.swap];
      pos_used[o.swap] = on;
      for (int j = sp.wlo; j <= sp.whi; ++j) win_used[j] = on;
      if (on) {
        seg_union[o.slot] |= sp.seg;
      } else {
        seg_union[o.slot] &= ~sp.seg;
      }
    }
    choice[i] = on ? oi : -1;
  };
  auto dfs = [&](auto&& self) -> bool {
    int best = -1;
    std::size_t best_count = 0;
    for (int i = 0; i < nload; ++i) {
      if (choice[i] >= 0) continue;
      std::size_t c = 0;
      for (const auto& o : options[i]) c += valid(o);
      if (c == 0) return false;
      if (best < 0 || c < best_count || (c == best_count && keys[i] < keys[best])) {
        best = i;
        best_count = c;
      }
    }
    if (best < 0) return true;
    std::vector<int> cand;
    for (int oi = 0; oi < static_cast<int>(options[best].size()); ++oi) {
      if (valid(options[best][oi])) cand.push_back(oi);
    }
    std::vector<std::uint64_t> tie(cand.size());
    if (shuffle_ties) {
      for (std::size_t c = 0; c < cand.size(); ++c) tie[c] = keys[best] ^ (static_cast<std::uint64_t>(cand[c]) * 0x9e3779b97f4a7c15ULL);
    }
    std::vector<std::size_t> idx(cand.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const Option& oa = options[best][cand[a]];
      const Option& ob = options[best][cand[b]];
      const auto ka = std::make_tuple(fill_count[oa.slot] > 0 ? 0 : 1, oa.swap >= 0 ? 1 : 0, tie[a]);
      const auto kb = std::make_tuple(fill_count[ob.slot] > 0 ? 0 : 1, ob.swap >= 0 ? 1 : 0, tie[b]);
      return ka < kb;
    });
    for (std::size_t c : idx) {
      if (++nodes > limit) throw AbsorbBudget{};
      apply(best, cand[c], true);
      if (self(self)) return true;
      apply(best, cand[c], false);
    }
    return false;
  };

  const int rounds = std::max(1, restarts);
  const std::uint64_t share = std::max<std::uint64_t>(1000, budget / static_cast<std::uint64_t>(rounds));
  bool found = false;
  std::uint64_t spent = 0;
  for (int round = 0; round < rounds && !found; ++round) {
    filler.assign(static_cast<std::size_t>(nslots), std::vector<Vertex>(static_cast<std::size_t>(s), -1));
    fill_count.assign(static_cast<std::size_t>(nslots), 0);
    pos_used.assign(swap_pos.size(), 0);
    win_used.assign(static_cast<std::size_t>(nwin), 0);
    seg_union.assign(static_cast<std::size_t>(nslots), 0);
    choice.assign(static_cast<std::size_t>(nload), -1);
    opened = 0;
    keys.assign(static_cast<std::size_t>(nload), 0);
    shuffle_ties = round > 0;
    if (round == 0) {
      std::iota(keys.begin(), keys.end(), 0);
    } else {
      for (auto& key : keys) key = rng.next();
    }
    nodes = 0;
    limit = share;
    try {
      found = dfs(dfs);
    } catch (const AbsorbBudget&) {
      found = false;
    }
    spent += nodes;
  }
  if (!found) return std::nullopt;

  Absorption result;
  result.nodes = spent;
  std::vector<Vertex> swapped(static_cast<std::size_t>(npos), -1);
  for (int i = 0; i < nload; ++i) {
    const Option& o = options[i][choice[i]];
    if (o.swap >= 0) {
      swapped[swap_pos[o.swap].pos] = load[i];
      ++result.swaps;
    }
  }
  std::vector<Vertex> order;
  for (int p = 0; p < npos;) {
    const int sl = pos_slot[p];
    if (sl >= 0 && p == slots[sl].offset && fill_count[sl] > 0) {
      for (Vertex l : cert.q.order) order.push_back(l >= xsize ? filler[sl][l - xsize] : slots[sl].x[l]);
      p += xsize;
      continue;
    }
    order.push_back(swapped[p] >= 0 ? swapped[p] : base[p]);
    ++p;
  }
  result.path = EllPath{k, ell, order};
  if (auto v = validate_path(h, result.path); !v.valid) {
    throw std::logic_error("absorption produced an invalid path: " + v.violation);
  }
  if (result.path.begin_end() != ap.base.begin_end() || result.path.end_end() != ap.base.end_end()) {
    throw std::logic_error("absorption changed the ordered ends");
  }
  for (int sl = 0; sl < nslots; ++sl) {
    if (fill_count[sl] == 0) continue;
    Absorber a;
    std::vector<Vertex> tgt;
    std::vector<std::pair<int, Vertex>> swaps;  // swap index, incoming vertex
    for (int i = 0; i < nload; ++i) {
      const Option& o = options[i][choice[i]];
      if (o.slot != sl) continue;
      tgt.push_back(load[i]);
      if (o.swap >= 0) swaps.emplace_back(o.swap, load[i]);
    }
    std::sort(swaps.begin(), swaps.end());
    a.target = VertexSet(tgt);
    a.without_target.push_back(EllPath{k, ell, slots[sl].x});
    std::vector<Vertex> q;
    for (Vertex l : cert.q.order) q.push_back(l >= xsize ? filler[sl][l - xsize] : slots[sl].x[l]);
    a.with_target.push_back(EllPath{k, ell, q});
    for (const auto& [si, v] : swaps) {
      const auto& sp = swap_pos[si];
      std::vector<Vertex> seg(base.begin() + sp.wlo * s, base.begin() + sp.whi * s + k);
      a.without_target.push_back(EllPath{k, ell, seg});
      std::replace(seg.begin(), seg.end(), base[sp.pos], v);
      a.with_target.push_back(EllPath{k, ell, seg});
    }
    for (const auto& p : a.without_target) a.tuple.insert(a.tuple.end(), p.order.begin(), p.order.end());
    if (auto v = check_absorber(h, a); !v.valid) {
      throw std::logic_error("absorber fails the swap check: " + v.violation);
    }
    result.absorbers.push_back(std::move(a));
  }
  return result;
}

AbsorbingPath build_absorbing_path(const Hypergraph& h, int ell, const AbsorbingParams& params) {
  check_regime(h, ell);
  const int k = h.k();
  const int n = h.n();
  const int s = k - ell;
  AbsorbingPath out;
  out.base = EllPath{k, ell, {}};
  out.path = out.base;
  out.descriptor = make_descriptor(h, ell);
  const int capacity = params.capacity < 0 ? (n + 10 * s - 1) / (10 * s) + 3 : params.capacity;
  out.descriptor.slots = capacity;
  if (capacity == 0) {
    if (params.reserve > 0) throw StageError("absorbing-path", "a reserved set needs at least one slot");
    return out;
  }
  const auto& cert = gadget_template(k, ell).cert;
  const int xsize = static_cast<int>(cert.p.order.size());
  const auto rwin = role_windows(cert);
  detail::Layout layout;
  layout.positions = xsize;
  for (int j = 0; j * s + k <= xsize; ++j) {
    layout.windows.emplace_back(cert.p.order.begin() + j * s, cert.p.order.begin() + j * s + k);
  }
  layout.preassigned.assign(static_cast<std::size_t>(xsize), -1);
  const int last = static_cast<int>(layout.windows.size()) - 1;
  Mask used = 0;
  for (Vertex v : params.avoid) {
    if (v < n) used |= bit(v);
  }
  const auto& desc = out.descriptor;
  auto remaining = [&]() -> std::uint64_t {
    if (params.budget == 0) return 0;
    return out.nodes >= params.budget ? 1 : params.budget - out.nodes;
  };

  // The P path goes in first; the S' roles are then independent of each
  // other, so each has its own set of acceptable vertices.
  for (int i = 0; i < capacity; ++i) {
    std::vector<Vertex> roles;
    detail::EngineOptions eo;
    eo.budget = remaining();
    eo.cover_bound = false;
    eo.fail_first = true;
    eo.forbidden = used;
    eo.accept = [&](const std::vector<Vertex>& x, int window) {
      if (window != last) return true;
      const Mask xm = mask_of(x);
      std::vector<std::vector<Vertex>> acc(static_cast<std::size_t>(s));
      for (int r = 0; r < s; ++r) {
        for (Vertex v = 0; v < n; ++v) {
          if (((used | xm) & bit(v)) == 0 && role_accepts(h, rwin[r], xsize, x, v)) acc[r].push_back(v);
        }
        if (acc[r].empty()) return false;
      }
      roles.assign(static_cast<std::size_t>(s), -1);
      auto pick = [&](auto&& self, int r, Mask taken) -> bool {
        if (r == s) {
          if (!desc.lattice) return true;
          const auto iv = index_of(desc.parts, roles);
          return iv == desc.base_first || iv == desc.base_second;
        }
        for (Vertex v : acc[r]) {
          if (taken & bit(v)) continue;
          roles[r] = v;
          if (self(self, r + 1, taken | bit(v))) return true;
        }
        return false;
      };
      return pick(pick, 0, 0);
    };
    const auto run = detail::run_sequence_search(h, layout, eo);
    out.nodes += run.nodes;
    if (run.status != SearchStatus::found) {
      throw StageError("absorbing-path", "no gadget copy available for slot " + std::to_string(i + 1) +
                                             (run.status == SearchStatus::budget_exhausted ? " (budget exhausted)" : ""));
    }
    AbsorberSlot slot;
    slot.x = run.assignment;
    slot.certified = roles;
    used |= mask_of(slot.x);
    out.slots.push_back(std::move(slot));
  }

  std::vector<Vertex> order = out.slots[0].x;
  out.slots[0].offset = 0;
  for (int i = 1; i < capacity; ++i) {
    const std::vector<Vertex> s_end(order.end() - ell, order.end());
    const std::vector<Vertex> t_end(out.slots[i].x.begin(), out.slots[i].x.begin() + ell);
    ConnectOptions co;
    co.min_len = 1;
    co.max_len = params.max_connector;
    co.forbidden = VertexSet::from_mask(used);
    co.budget = remaining();
    const auto res = connect(h, ell, s_end, t_end, co);
    out.nodes += res.nodes;
    if (res.status != SearchStatus::found) {
      throw StageError("absorbing-path", "cannot connect slot " + std::to_string(i) + " to slot " + std::to_string(i + 1) +
                                             " (ends " + VertexSet(s_end).to_string() + " and " +
                                             VertexSet(t_end).to_string() + ")");
    }
    const auto& c = res.path->order;
    order.insert(order.end(), c.begin() + ell, c.end() - ell);
    used |= mask_of(c);
    out.slots[i].offset = static_cast<int>(order.size());
    order.insert(order.end(), out.slots[i].x.begin(), out.slots[i].x.end());
  }
  out.base = EllPath{k, ell, order};
  if (auto v = validate_path(h, out.base); !v.valid) throw std::logic_error("absorbing path is invalid: " + v.violation);
  out.path = out.base;

  if (params.reserve > 0 && desc.lattice) {
    out.descriptor.reserve = params.reserve;
    const int p = params.reserve;
    if (4 * p > capacity) throw StageError("absorbing-path", "reserved set needs more slots than the path has");
    SplitMix64 rng(params.seed);
    std::vector<std::vector<Vertex>> pool(2);
    for (int part = 0; part < 2; ++part) {
      for (Vertex v : desc.parts[part]) {
        if (!(used & bit(v))) pool[part].push_back(v);
      }
      rng.shuffle(std::span<Vertex>(pool[part]));
    }
    const int need0 = 2 * p * (desc.base_first[0] + desc.base_second[0]);
    const int need1 = 2 * p * (desc.base_first[1] + desc.base_second[1]);
    if (static_cast<int>(pool[0].size()) < need0 || static_cast<int>(pool[1].size()) < need1) {
      throw StageError("absorbing-path", "not enough free vertices for the reserved set");
    }
    std::vector<Vertex> r1(pool[0].begin(), pool[0].begin() + need0);
    r1.insert(r1.end(), pool[1].begin(), pool[1].begin() + need1);
    std::sort(r1.begin(), r1.end());
    out.descriptor.reserved = r1;
    auto res = absorb(h, out, {}, remaining(), rng.next());
    if (!res) throw StageError("absorbing-path", "cannot absorb the reserved set");
    out.nodes += res->nodes;
    out.path = res->path;
  }
  return out;
}

PathCover path_cover(const Hypergraph& h, int ell, const VertexSet& avoid, std::uint64_t seed) {
  const int k = h.k();
  if (ell < 1 || ell >= k) throw DomainError("need 1 <= ell < k");
  if (!h.has_masks()) throw DomainError("path cover supports at most 64 vertices");
  SplitMix64 rng(seed);
  Mask free = h.all_vertices();
  for (Vertex v : avoid) {
    if (v < h.n()) free &= ~bit(v);
  }
  const auto& masks = h.edge_masks();
  constexpr int kLookahead = 16;

  auto onward = [&](Mask end, Mask avail) {
    int count = 0;
    const Vertex first = __builtin_ctzll(end);
    for (std::size_t e : h.incident(first)) {
      const Mask m = masks[e];
      if ((m & end) == end && (m & ~end & ~avail) == 0) {
        if (++count >= kLookahead) break;
      }
    }
    return count;
  };
  // Appends k - ell vertices after the last ell of `order`; false when stuck.
  auto extend = [&](std::vector<Vertex>& order) {
    const std::vector<Vertex> tail(order.end() - ell, order.end());
    const Mask end = mask_of(tail);
    int best_score = -1;
    std::uint64_t best_key = 0;
    Mask best_new = 0, best_end = 0;
    for (std::size_t e : h.incident(tail[0])) {
      const Mask m = masks[e];
      if ((m & end) != end) continue;
      const Mask fresh = m & ~end;
      if ((fresh & ~free) != 0) continue;
      const auto fv = members_of(fresh);
      for_each_subset(fv, ell, [&](const std::vector<Vertex>& d) {
        const Mask dm = mask_of(d);
        const int score = onward(dm, free & ~fresh);
        const std::uint64_t key = rng.next();
        if (score > best_score || (score == best_score && key < best_key)) {
          best_score = score;
          best_key = key;
          best_new = fresh;
          best_end = dm;
        }
        return true;
      });
    }
    if (best_score < 0) return false;
    for (Vertex v : members_of(best_new & ~best_end)) order.push_back(v);
    for (Vertex v : members_of(best_end)) order.push_back(v);
    free &= ~best_new;
    return true;
  };

  PathCover out;
  while (true) {
    std::vector<std::size_t> seeds;
    for (std::size_t e = 0; e < masks.size(); ++e) {
      if ((masks[e] & ~free) == 0) seeds.push_back(e);
    }
    if (seeds.empty()) break;
    const Mask e = masks[seeds[rng.uniform(seeds.size())]];
    std::vector<Vertex> order = members_of(e);
    rng.shuffle(std::span<Vertex>(order));
    free &= ~e;
    while (extend(order)) {
    }
    std::reverse(order.begin(), order.end());
    while (extend(order)) {
    }
    out.paths.push_back(EllPath{k, ell, std::move(order)});
  }
  out.leftover = members_of(free);
  return out;
}

namespace {

void fail_stage(PipelineReport& r, const std::string& stage, const std::string& what) {
  r.failed_stage = stage;
  r.failure = what;
}

PipelineReport attempt_pipeline(const Hypergraph& h, int ell, const PipelineParams& params, SplitMix64& rng) {
  const int k = h.k();
  const int n = h.n();
  const int s = k - ell;
  PipelineReport r;
  r.k = k;
  r.ell = ell;
  r.n = n;

  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span<Vertex>(perm));
  std::vector<Vertex> inv(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) inv[perm[v]] = v;
  const Hypergraph g = relabel(h, perm);

  // reservoir
  int rsize = static_cast<int>(std::lround(params.reservoir_fraction * n));
  rsize = std::clamp(rsize, 0, n);
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(std::span<Vertex>(all));
  std::vector<Vertex> reservoir(all.begin(), all.begin() + rsize);
  std::sort(reservoir.begin(), reservoir.end());
  const Mask rmask = mask_of(reservoir);
  r.reservoir_size = rsize;

  // absorbing path
  AbsorbingParams ap;
  if (params.capacity < 0) {
    // at most half of the non-reservoir vertices go to slots and their links
    const int xsize = static_cast<int>(gadget_template(k, ell).cert.p.order.size());
    const int room = (n - rsize) / (2 * (xsize + k - 2 * ell));
    ap.capacity = std::max(1, std::min((rsize + s - 1) / s + 3, room));
  } else {
    ap.capacity = params.capacity;
  }
  ap.reserve = params.reserve;
  ap.max_connector = params.max_connector;
  ap.avoid = VertexSet(reservoir);
  ap.budget = params.stage_budget;
  ap.seed = rng.next();
  AbsorbingPath absorbing;
  try {
    absorbing = build_absorbing_path(g, ell, ap);
  } catch (const StageError& e) {
    fail_stage(r, e.stage(), e.what());
    return r;
  }
  r.slots = static_cast<int>(absorbing.slots.size());
  r.absorbing_path_vertices = static_cast<int>(absorbing.path.order.size());
  r.descriptor = absorbing.descriptor;
  for (auto& part : r.descriptor.parts) part = map_sorted(part, inv);
  r.descriptor.reserved = map_sorted(r.descriptor.reserved, inv);
  const Mask pmask = mask_of(absorbing.path.order);

  // path cover
  const PathCover cover = path_cover(g, ell, VertexSet::from_mask(rmask | pmask), rng.next());
  r.cover_paths = static_cast<int>(cover.paths.size());
  r.cover_leftover = static_cast<int>(cover.leftover.size());
  const Mask xmask = mask_of(cover.leftover);

  // connection
  std::vector<const EllPath*> chain;
  if (!absorbing.path.order.empty()) chain.push_back(&absorbing.path);
  for (const auto& p : cover.paths) chain.push_back(&p);
  if (chain.empty()) {
    fail_stage(r, "connection", "no paths to connect");
    return r;
  }
  const Mask everything = g.all_vertices();
  Mask spent = 0;
  std::vector<Vertex> order = chain[0]->order;
  const int c = static_cast<int>(chain.size());
  for (int i = 0; i < c; ++i) {
    const EllPath& next = *chain[(i + 1) % c];
    const std::vector<Vertex> s_end(order.end() - ell, order.end());
    const std::vector<Vertex> t_end(next.order.begin(), next.order.begin() + ell);
    std::optional<EllPath> link;
    for (int round = 0; round < 2 && !link; ++round) {
      const Mask pool = (round == 0 ? rmask : (rmask | xmask)) & ~spent;
      ConnectOptions co;
      co.min_len = 1;
      co.max_len = params.max_connector;
      co.forbidden = VertexSet::from_mask(everything & ~pool);
      co.budget = params.stage_budget;
      auto res = connect(g, ell, s_end, t_end, co);
      if (res.status == SearchStatus::found) {
        link = std::move(res.path);
        if (round == 1) ++r.connections_fallback;
      }
    }
    if (!link) {
      fail_stage(r, "connection", "no connector from path " + std::to_string(i + 1) + " to path " +
                                      std::to_string((i + 1) % c + 1) + " through the reservoir");
      return r;
    }
    ++r.connections;
    spent |= mask_of(link->order) & ~(mask_of(s_end) | mask_of(t_end));
    order.insert(order.end(), link->order.begin() + ell, link->order.end() - ell);
    if (i + 1 < c) order.insert(order.end(), next.order.begin(), next.order.end());
  }
  const Mask covered = mask_of(order);
  const std::vector<Vertex> leftover = members_of(everything & ~covered);
  if (leftover.size() % static_cast<std::size_t>(s) != 0) throw std::logic_error("leftover size not divisible by k - ell");
  r.leftover = static_cast<int>(leftover.size());

  // absorption
  const VertexSet lx(leftover);
  r.lattice_certified = lattice_check(absorbing.descriptor, k, ell, lx).ok();
  std::vector<Vertex> final_order;
  if (absorbing.path.order.empty()) {
    if (!leftover.empty()) {
      fail_stage(r, "absorption", std::to_string(leftover.size()) + " leftover vertices and no absorbing path");
      return r;
    }
    final_order = order;
  } else {
    const auto res = absorb(g, absorbing, lx, params.stage_budget, rng.next(), params.restarts);
    if (!res) {
      fail_stage(r, "absorption", "no assignment of " + std::to_string(leftover.size() + absorbing.descriptor.reserved.size()) +
                                      " vertices to " + std::to_string(absorbing.slots.size()) + " slots");
      return r;
    }
    r.absorbed_sets = static_cast<int>(res->absorbers.size());
    r.swaps = res->swaps;
    for (const auto& a : res->absorbers) r.absorbers.push_back(map_absorber(a, inv));
    final_order = res->path.order;
    final_order.insert(final_order.end(), order.begin() + static_cast<std::ptrdiff_t>(absorbing.path.order.size()), order.end());
  }
  EllCycle cyc{k, ell, map_vertices(final_order, inv)};
  const auto v = validate_cycle(h, cyc);
  if (!v.valid || !v.hamilton) throw std::logic_error("pipeline produced a non-Hamilton cycle: " + v.violation);
  r.cycle = std::move(cyc);
  return r;
}

}  // namespace

PipelineReport run_pipeline(const Hypergraph& h, int ell, const PipelineParams& params, std::uint64_t seed) {
  check_regime(h, ell);
  const int s = h.k() - ell;
  if (h.n() % s != 0) throw DomainError("k - ell must divide n");
  if (params.reservoir_fraction < 0 || params.reservoir_fraction > 1) throw DomainError("reservoir fraction must lie in [0, 1]");
  SplitMix64 master(seed);
  const int attempts = std::max(1, params.attempts);
  PipelineReport r;
  for (int a = 1; a <= attempts; ++a) {
    SplitMix64 rng = master.split();
    r = attempt_pipeline(h, ell, params, rng);
    r.seed = seed;
    r.attempts = a;
    if (r.success()) break;
  }
  return r;
}

}  // namespace hyperham
