#include "fk/enumerate.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace fk {

namespace {

constexpr double kLnSqrt2 = 0.34657359027997264;  // ln sqrt 2

struct UnionFind {
  int parent[160];
  void reset(int n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
};

struct KahanRow {
  std::vector<double> sum, comp;
  explicit KahanRow(size_t n) : sum(n, 0.0), comp(n, 0.0) {}
  void fold(std::vector<double>& chunk) {
    for (size_t i = 0; i < sum.size(); ++i) {
      double y = chunk[i] - comp[i];
      double t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
      chunk[i] = 0.0;
    }
  }
};

// exp(o ln x + l ln sqrt2 - shift), shifted so the largest entry is 1
struct LoopWeightTable {
  int stride = 0;
  std::vector<double> w;
  LoopWeightTable(const Params& pr, int bonds, int lmax) {
    stride = lmax + 1;
    const double lnx = std::log(pr.x);
    const double shift = std::max(0.0, bonds * lnx) + lmax * kLnSqrt2;
    w.resize((size_t)(bonds + 1) * stride);
    for (int o = 0; o <= bonds; ++o)
      for (int l = 0; l <= lmax; ++l)
        w[(size_t)o * stride + l] = std::exp(o * lnx + l * kLnSqrt2 - shift);
  }
  double at(int o, int l) const { return w[(size_t)o * stride + l]; }
};

// Bonds whose endpoints the boundary condition already wires together factor
// out of every normalized quantity: opening one multiplies both the numerator
// and the partition sum by the same constant. The enumeration caps count the
// bonds that actually vary.
void check_cap(int effective_bonds, int cap) {
  if (effective_bonds > cap) throw std::invalid_argument("enumeration cap exceeded");
  if (effective_bonds > 62)
    throw std::invalid_argument("too many bonds for a 64-bit mask");
}

struct TraceScratch {
  std::vector<int16_t> path, cum;
  uint64_t visited[4];
  explicit TraceScratch(int ne) : path(ne + 1), cum(ne + 1) {}
  void clear_visited() { std::memset(visited, 0, sizeof visited); }
  bool seen(int e) const { return visited[e >> 6] >> (e & 63) & 1; }
  void mark(int e) { visited[e >> 6] |= 1ull << (e & 63); }
};

// exploration path e_a -> e_b; returns length, fills path/cum (quarter turns)
int trace_path(const Medial& m, uint64_t bits, TraceScratch& ts) {
  int e = m.e_a, c = 0, n = 0;
  for (;;) {
    ts.path[n] = (int16_t)e;
    ts.cum[n] = (int16_t)c;
    ++n;
    ts.mark(e);
    if (e == m.e_b) return n;
    unsigned s = bits >> m.bond_at_head[e] & 1;
    c += m.turn[2 * e + s];
    e = m.succ[2 * e + s];
  }
}

// the loop through e0; total turning must be +-4 quarter turns
int trace_e0_loop(const Medial& m, uint64_t bits, TraceScratch& ts) {
  int e = m.e0, c = 0, n = 0;
  do {
    ts.path[n] = (int16_t)e;
    ts.cum[n] = (int16_t)c;
    ++n;
    ts.mark(e);
    unsigned s = bits >> m.bond_at_head[e] & 1;
    c += m.turn[2 * e + s];
    e = m.succ[2 * e + s];
  } while (e != m.e0);
  ts.path[n] = (int16_t)e;  // sentinel slot carries the total turning
  ts.cum[n] = (int16_t)c;
  if (c != 4 && c != -4) throw std::logic_error("loop turning is not +-2pi");
  return n;
}

int trace_remaining_loops(const Medial& m, int n_seed, uint64_t bits, TraceScratch& ts) {
  int loops = 0;
  for (int seed = 0; seed < n_seed; ++seed) {
    if (ts.seen(seed)) continue;
    int e = seed;
    do {
      ts.mark(e);
      unsigned s = bits >> m.bond_at_head[e] & 1;
      e = m.succ[2 * e + s];
    } while (e != seed);
    ++loops;
  }
  return loops;
}

std::vector<Observable> run_observable(const Domain& d, const Medial& m,
                                       const std::vector<Params>& ps, int cap,
                                       bool bulk) {
  if (bulk && m.e0 < 0) throw std::invalid_argument("medial has no reference edge");
  if (!bulk && m.e_a < 0) throw std::invalid_argument("medial has no marked half-edges");
  const int E = d.n_bonds();
  // Bonds inside the wired arc pass a collapsed (degree-2) medial vertex, so
  // the trace never consults them; each open one multiplies the weight by
  // x sqrt2 in numerator and denominator alike. Condition them closed.
  std::vector<int> free_idx;
  for (int bi = 0; bi < E; ++bi)
    if (!(d.wired_bond_mask >> bi & 1)) free_idx.push_back(bi);
  const int nf = (int)free_idx.size();
  check_cap(nf, cap);
  const int ne = m.n_edges();
  const int np = (int)ps.size();
  const int lmax = ne / 4 + 2;
  std::vector<LoopWeightTable> wt;
  wt.reserve(np);
  for (auto& pr : ps) wt.emplace_back(pr, nf, lmax);

  std::vector<double> chunk((size_t)np * ne * 8, 0.0), zchunk(np, 0.0);
  KahanRow bins((size_t)np * ne * 8), zsum(np);
  TraceScratch ts(ne);
  const int n_dom = m.e_a >= 0 ? m.e_a : ne;
  const uint64_t nconf = 1ull << nf;

  // gray-code order: step i flips the free bond at countr_zero(i+1)
  uint64_t bits = 0;
  for (uint64_t i = 0;; ++i) {
    ts.clear_visited();
    int plen, T, loops;
    if (bulk) {
      plen = trace_e0_loop(m, bits, ts);
      T = ts.cum[plen];
      loops = 1 + trace_remaining_loops(m, n_dom, bits, ts);
    } else {
      plen = trace_path(m, bits, ts);
      T = ts.cum[plen - 1];
      loops = trace_remaining_loops(m, n_dom, bits, ts);
    }
    const int o = std::popcount(bits);
    for (int k = 0; k < np; ++k) {
      const double w = wt[k].at(o, loops);
      zchunk[k] += w;
      double* bk = chunk.data() + (size_t)k * ne * 8;
      for (int i2 = 0; i2 < plen; ++i2)
        bk[(size_t)ts.path[i2] * 8 + ((T - ts.cum[i2]) & 7)] += w;
    }
    const bool last = i + 1 == nconf;
    if ((i & 4095) == 4095 || last) {
      bins.fold(chunk);
      zsum.fold(zchunk);
    }
    if (last) break;
    bits ^= 1ull << free_idx[std::countr_zero(i + 1)];
  }

  std::complex<double> zeta[8];
  for (int q = 0; q < 8; ++q)
    zeta[q] = std::polar(1.0, q * std::numbers::pi / 4.0);
  std::vector<Observable> out(np);
  for (int k = 0; k < np; ++k) {
    out[k].params = ps[k];
    out[k].scaled_z = zsum.sum[k];
    out[k].F.assign(ne, {0.0, 0.0});
    for (int e = 0; e < ne; ++e) {
      std::complex<double> acc{0.0, 0.0};
      for (int q = 0; q < 8; ++q)
        acc += bins.sum[(size_t)k * ne * 8 + (size_t)e * 8 + q] * zeta[q];
      out[k].F[e] = acc / zsum.sum[k];
    }
  }
  return out;
}

}  // namespace

double rc_weight(const Domain& d, uint64_t bits, double p, double q, Bc bc) {
  const int E = d.n_bonds();
  const int n = (int)d.sites.size();
  UnionFind uf;
  uf.reset(n);
  if (bc == Bc::wired_bc) {
    for (size_t k = 1; k < d.cycle.size(); ++k) uf.unite(d.cycle[0], d.cycle[k]);
  } else if (bc == Bc::dobrushin_bc) {
    if (!d.marked()) throw std::invalid_argument("dobrushin weight needs marked points");
    for (int i = 0; i < n; ++i)
      if (d.site_arc[i] & Domain::wired_arc) uf.unite(d.cycle[d.pos_b], i);
  }
  for (int bi = 0; bi < E; ++bi)
    if (bits >> bi & 1) uf.unite(d.bonds[bi].first, d.bonds[bi].second);
  int clusters = 0;
  for (int i = 0; i < n; ++i)
    if (uf.find(i) == i) ++clusters;
  const int o = std::popcount(bits);
  return std::pow(p, o) * std::pow(1.0 - p, E - o) * std::pow(q, clusters);
}

LoopDecomposition loop_decompose(const Domain& d, const Medial& m, uint64_t bits) {
  LoopDecomposition out;
  TraceScratch ts(m.n_edges());
  ts.clear_visited();
  const int n_dom = m.e_a >= 0 ? m.e_a : m.n_edges();
  int plen;
  bool bulk = m.e0 >= 0;
  if (bulk) {
    plen = trace_e0_loop(m, bits, ts);
    out.traced_loops = 1;
  } else {
    plen = trace_path(m, bits, ts);
  }
  out.path.assign(ts.path.begin(), ts.path.begin() + plen);
  out.path_cum.assign(ts.cum.begin(), ts.cum.begin() + plen);
  for (int seed = 0; seed < n_dom; ++seed) {
    if (ts.seen(seed)) continue;
    std::vector<int16_t> loop;
    int e = seed;
    do {
      ts.mark(e);
      loop.push_back((int16_t)e);
      unsigned s = bits >> m.bond_at_head[e] & 1;
      e = m.succ[2 * e + s];
    } while (e != seed);
    out.loops.push_back(std::move(loop));
    ++out.traced_loops;
  }
  out.loop_count =
      out.traced_loops + (bulk ? 0 : std::popcount(bits & d.wired_bond_mask));
  return out;
}

double loop_weight(const Domain& d, const Medial& m, const Params& pr, uint64_t bits) {
  LoopDecomposition dec = loop_decompose(d, m, bits);
  return std::pow(pr.x, std::popcount(bits)) *
         std::pow(std::numbers::sqrt2, dec.loop_count);
}

std::vector<Observable> observable_exact_multi(const Domain& d, const Medial& m,
                                               const std::vector<Params>& ps, int cap) {
  return run_observable(d, m, ps, cap, false);
}

Observable observable_exact(const Domain& d, const Medial& m, const Params& pr,
                            int cap) {
  return run_observable(d, m, {pr}, cap, false)[0];
}

std::vector<Observable> observable_bulk_exact_multi(const Domain& d, const Medial& m,
                                                    const std::vector<Params>& ps,
                                                    int cap) {
  return run_observable(d, m, ps, cap, true);
}

Observable observable_bulk_exact(const Domain& d, const Medial& m, const Params& pr,
                                 int cap) {
  return run_observable(d, m, {pr}, cap, true)[0];
}

double connection_prob(const Domain& d, double p, double q, Bc bc,
                       const std::vector<Site>& A, const std::vector<Site>& B,
                       int cap) {
  const int E = d.n_bonds();
  const int n = (int)d.sites.size();
  std::vector<int> ia, ib;
  for (Site s : A) {
    int i = d.index_of(s);
    if (i < 0) throw std::invalid_argument("A site outside the domain");
    ia.push_back(i);
  }
  for (Site s : B) {
    int i = d.index_of(s);
    if (i < 0) throw std::invalid_argument("B site outside the domain");
    ib.push_back(i);
  }

  UnionFind base;
  base.reset(n);
  if (bc == Bc::wired_bc) {
    for (size_t k = 1; k < d.cycle.size(); ++k) base.unite(d.cycle[0], d.cycle[k]);
  } else if (bc == Bc::dobrushin_bc) {
    if (!d.marked()) throw std::invalid_argument("dobrushin needs marked points");
    for (int i = 0; i < n; ++i)
      if (d.site_arc[i] & Domain::wired_arc) base.unite(d.cycle[d.pos_b], i);
  }
  for (int i = 0; i < n; ++i) base.find(i);  // compress

  // bonds already joined by the wiring never change connectivity; their open
  // state contributes equal factors to numerator and denominator
  std::vector<int> vary;
  for (int bi = 0; bi < E; ++bi)
    if (base.find(d.bonds[bi].first) != base.find(d.bonds[bi].second))
      vary.push_back(bi);
  const int nf = (int)vary.size();
  check_cap(nf, cap);

  // (1-p)^nf is a common factor: use exp(o ln(p/(1-p)) + k ln q - shift)
  const double lw = std::log(p / (1.0 - p)), lq = std::log(q);
  const double shift = std::max(0.0, nf * lw) + (n + 1) * lq;
  std::vector<double> wt((nf + 1) * (n + 2));
  for (int o = 0; o <= nf; ++o)
    for (int k = 0; k <= n + 1; ++k)
      wt[o * (n + 2) + k] = std::exp(o * lw + k * lq - shift);

  KahanRow acc(2);
  std::vector<double> chunk2(2, 0.0);
  UnionFind uf;
  const uint64_t nconf = 1ull << nf;
  for (uint64_t bits = 0;; ++bits) {
    std::memcpy(uf.parent, base.parent, sizeof(int) * n);
    uint64_t rest = bits;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      uf.unite(d.bonds[vary[j]].first, d.bonds[vary[j]].second);
    }
    int clusters = 0;
    for (int i = 0; i < n; ++i)
      if (uf.find(i) == i) ++clusters;
    bool hit = false;
    for (int u : ia) {
      int ru = uf.find(u);
      for (int v : ib)
        if (ru == uf.find(v)) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    const double w = wt[std::popcount(bits) * (n + 2) + clusters];
    chunk2[0] += w;
    if (hit) chunk2[1] += w;
    const bool last = bits + 1 == nconf;
    if ((bits & 4095) == 4095 || last) acc.fold(chunk2);
    if (last) break;
  }
  return acc.sum[1] / acc.sum[0];
}

std::vector<std::vector<double>> wired_connection_profile_multi(
    const Domain& d, const std::vector<Params>& ps, int cap) {
  if (!d.marked()) throw std::invalid_argument("profile needs marked points");
  const int E = d.n_bonds();
  const int n = (int)d.sites.size();
  const int np = (int)ps.size();

  UnionFind base;
  base.reset(n);
  const int wroot = d.cycle[d.pos_b];
  for (int i = 0; i < n; ++i)
    if (d.site_arc[i] & Domain::wired_arc) base.unite(wroot, i);
  for (int i = 0; i < n; ++i) base.find(i);

  std::vector<int> vary;
  for (int bi = 0; bi < E; ++bi)
    if (base.find(d.bonds[bi].first) != base.find(d.bonds[bi].second))
      vary.push_back(bi);
  const int nf = (int)vary.size();
  check_cap(nf, cap);

  const double lq = std::log(2.0);
  std::vector<double> wt((size_t)np * (nf + 1) * (n + 2));
  for (int pi = 0; pi < np; ++pi) {
    const double lw = std::log(ps[pi].p / (1.0 - ps[pi].p));
    const double shift = std::max(0.0, nf * lw) + (n + 1) * lq;
    for (int o = 0; o <= nf; ++o)
      for (int k = 0; k <= n + 1; ++k)
        wt[((size_t)pi * (nf + 1) + o) * (n + 2) + k] =
            std::exp(o * lw + k * lq - shift);
  }

  // per p: per-site hits plus the partition sum in slot n
  std::vector<KahanRow> acc(np, KahanRow(n + 1));
  std::vector<std::vector<double>> chunk(np, std::vector<double>(n + 1, 0.0));
  UnionFind uf;
  const uint64_t nconf = 1ull << nf;
  for (uint64_t bits = 0;; ++bits) {
    std::memcpy(uf.parent, base.parent, sizeof(int) * n);
    uint64_t rest = bits;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      uf.unite(d.bonds[vary[j]].first, d.bonds[vary[j]].second);
    }
    int clusters = 0;
    for (int i = 0; i < n; ++i)
      if (uf.find(i) == i) ++clusters;
    const int o = std::popcount(bits);
    const int rw = uf.find(wroot);
    for (int pi = 0; pi < np; ++pi) {
      const double w = wt[((size_t)pi * (nf + 1) + o) * (n + 2) + clusters];
      chunk[pi][n] += w;
      for (int i = 0; i < n; ++i)
        if (uf.find(i) == rw) chunk[pi][i] += w;
    }
    const bool last = bits + 1 == nconf;
    if ((bits & 4095) == 4095 || last)
      for (int pi = 0; pi < np; ++pi) acc[pi].fold(chunk[pi]);
    if (last) break;
  }
  std::vector<std::vector<double>> out(np, std::vector<double>(n));
  for (int pi = 0; pi < np; ++pi)
    for (int i = 0; i < n; ++i) out[pi][i] = acc[pi].sum[i] / acc[pi].sum[n];
  return out;
}

std::vector<double> wired_connection_profile(const Domain& d, const Params& pr,
                                             int cap) {
  return wired_connection_profile_multi(d, {pr}, cap)[0];
}

}  // namespace fk
