#include "fk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "fk/params.hpp"

namespace fk {

namespace {

struct UF {
  std::vector<int> up;
  void reset(int n) {
    up.resize(n);
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int i) {
    while (up[i] != i) {
      up[i] = up[up[i]];
      i = up[i];
    }
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) up[a] = b;
  }
};

int boundary_sides(int x, int y, int w, int h) {
  return (x == 0) + (x == w - 1) + (y == 0) + (y == h - 1);
}

// 256 probe sweeps, then the default rule: max(100, 10 tau) more.
long run_burn_in(SpinConfig& sc, double beta, SpinBc bc, CounterRng& rng,
                 long burn_in,
                 const std::function<double(const SpinConfig&)>& probe) {
  if (burn_in < 0) {
    const long pilot = 256;
    std::vector<double> xs;
    xs.reserve(pilot);
    for (long i = 0; i < pilot; ++i) {
      sw_step(sc, beta, bc, rng);
      xs.push_back(probe(sc));
    }
    const McEstimate pe = batch_stats(xs);
    burn_in = std::max<long>(
        100, (long)std::ceil(10 * pe.autocorrelation_time_estimate));
    for (long i = 0; i < burn_in; ++i) sw_step(sc, beta, bc, rng);
    return pilot + burn_in;
  }
  for (long i = 0; i < burn_in; ++i) sw_step(sc, beta, bc, rng);
  return burn_in;
}

void check_box_margin(int box, Site c, Site t, Site a) {
  const int need = std::max(std::abs(a.x), std::abs(a.y));
  const auto margin = [&](Site s) {
    return std::min(std::min(s.x, s.y),
                    std::min(box - 1 - s.x, box - 1 - s.y));
  };
  if (margin(c) < need || margin(t) < need)
    throw std::invalid_argument(
        "two-point estimate: sites need margin >= |a| inside the box");
}

}  // namespace

SpinConfig SpinConfig::all_up(int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("spin box must be nonempty");
  SpinConfig sc;
  sc.w = w;
  sc.h = h;
  sc.s.assign((size_t)w * h, 1);
  return sc;
}

McEstimate batch_stats(const std::vector<double>& xs) {
  McEstimate e;
  const long n = (long)xs.size();
  if (n == 0) return e;
  if (n < 16) {
    double m = 0;
    for (double x : xs) m += x;
    m /= n;
    double s2 = 0;
    for (double x : xs) s2 += (x - m) * (x - m);
    s2 = n > 1 ? s2 / (n - 1) : 0;
    e.mean = m;
    e.std_error = std::sqrt(s2 / n);
    e.n_samples = n;
    return e;
  }
  const long nb = std::clamp(n / 16, (long)4, (long)64);
  const long l = n / nb;
  const long used = nb * l;
  double m = 0;
  for (long i = 0; i < used; ++i) m += xs[i];
  m /= used;
  double s2 = 0;
  for (long i = 0; i < used; ++i) s2 += (xs[i] - m) * (xs[i] - m);
  s2 /= used - 1;
  double sb2 = 0;
  for (long j = 0; j < nb; ++j) {
    double bm = 0;
    for (long i = j * l; i < (j + 1) * l; ++i) bm += xs[i];
    bm /= l;
    sb2 += (bm - m) * (bm - m);
  }
  sb2 /= nb - 1;
  e.mean = m;
  e.std_error = std::sqrt(sb2 / nb);
  e.n_samples = used;
  e.autocorrelation_time_estimate =
      s2 > 0 ? std::max(0.5, l * sb2 / (2 * s2)) : 0.5;
  return e;
}

void sw_step(SpinConfig& sc, double beta, SpinBc bc, CounterRng& rng) {
  const int w = sc.w, h = sc.h, n = w * h, ghost = n;
  const double p = 1 - std::exp(-2 * beta);
  thread_local UF uf;
  uf.reset(n + 1);

  if (bc == SpinBc::strip_dobrushin)
    for (int x = 0; x < w; ++x) uf.unite(sc.idx(x, 0), ghost);

  // Bond draws happen for every bond so the stream position is independent
  // of the configuration.
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x) {
      const bool open = rng.unit() < p;
      const int i = sc.idx(x, y);
      if (open && sc.s[i] == sc.s[i + 1]) uf.unite(i, i + 1);
    }
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x) {
      const bool open = rng.unit() < p;
      const int i = sc.idx(x, y);
      if (open && sc.s[i] == sc.s[i + w]) uf.unite(i, i + w);
    }
  if (bc == SpinBc::plus)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const int k = boundary_sides(x, y, w, h);
        const int i = sc.idx(x, y);
        for (int j = 0; j < k; ++j) {
          const bool open = rng.unit() < p;
          if (open && sc.s[i] == 1) uf.unite(i, ghost);
        }
      }

  const int pinned = bc == SpinBc::free_bc ? -1 : uf.find(ghost);
  thread_local std::vector<int8_t> spin, have;
  spin.assign(n + 1, 0);
  have.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (r == pinned) {
      sc.s[i] = 1;
      continue;
    }
    if (!have[r]) {
      have[r] = 1;
      spin[r] = rng.bern(0.5) ? 1 : -1;
    }
    sc.s[i] = spin[r];
  }
}

std::vector<uint8_t> fk_from_spins(const SpinConfig& sc, double p,
                                   CounterRng& rng) {
  const int w = sc.w, h = sc.h;
  std::vector<uint8_t> open((size_t)(w - 1) * h + (size_t)w * (h - 1));
  size_t bi = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x, ++bi) {
      const bool u = rng.unit() < p;
      open[bi] = u && sc.s[sc.idx(x, y)] == sc.s[sc.idx(x + 1, y)];
    }
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x, ++bi) {
      const bool u = rng.unit() < p;
      open[bi] = u && sc.s[sc.idx(x, y)] == sc.s[sc.idx(x, y + 1)];
    }
  return open;
}

namespace {

// Union of the coupled bond configuration, bond order as in fk_from_spins.
void unite_open_bonds(const SpinConfig& sc, const std::vector<uint8_t>& open,
                      UF& uf) {
  const int w = sc.w, h = sc.h;
  uf.reset(w * h);
  size_t bi = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x, ++bi)
      if (open[bi]) uf.unite(sc.idx(x, y), sc.idx(x + 1, y));
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x, ++bi)
      if (open[bi]) uf.unite(sc.idx(x, y), sc.idx(x, y + 1));
}

}  // namespace

McEstimate estimate_two_point(int box, double p, Site a, long n_samples,
                              long burn_in, uint64_t seed,
                              long* burn_in_used) {
  const auto fam = estimate_two_point_family(box, p, a, 1, 1, n_samples,
                                             burn_in, seed, burn_in_used);
  return fam[0];
}

std::vector<McEstimate> estimate_two_point_family(int box, double p, Site dir,
                                                  int n_min, int n_max,
                                                  long n_samples, long burn_in,
                                                  uint64_t seed,
                                                  long* burn_in_used) {
  if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");
  if (n_min < 0 || n_max < n_min) throw std::invalid_argument("bad n range");
  const Params pr = params_from_p(p);
  if (p >= self_dual_p())
    throw std::invalid_argument(
        "two-point estimate targets the subcritical regime, need p below the "
        "self-dual point");
  const Site c{box / 2, box / 2};
  for (int k = n_min; k <= n_max; ++k) {
    const Site ak{k * dir.x, k * dir.y};
    check_box_margin(box, c, {c.x + ak.x, c.y + ak.y}, ak);
  }

  SpinConfig sc = SpinConfig::all_up(box, box);
  CounterRng rng(seed, 0);
  const Site t0{c.x + n_min * dir.x, c.y + n_min * dir.y};
  const long used = run_burn_in(sc, pr.beta, SpinBc::free_bc, rng, burn_in,
                                [&](const SpinConfig& s) {
                                  return (double)s.s[s.idx(c.x, c.y)] *
                                         s.s[s.idx(t0.x, t0.y)];
                                });
  if (burn_in_used) *burn_in_used = used;

  const int nk = n_max - n_min + 1;
  std::vector<std::vector<double>> series(nk);
  for (auto& v : series) v.reserve(n_samples);
  UF uf;
  for (long i = 0; i < n_samples; ++i) {
    sw_step(sc, pr.beta, SpinBc::free_bc, rng);
    const auto open = fk_from_spins(sc, p, rng);
    unite_open_bonds(sc, open, uf);
    const int rc = uf.find(sc.idx(c.x, c.y));
    for (int k = 0; k < nk; ++k) {
      const int kk = n_min + k;
      const int rt = uf.find(sc.idx(c.x + kk * dir.x, c.y + kk * dir.y));
      series[k].push_back(rc == rt ? 1.0 : 0.0);
    }
  }
  std::vector<McEstimate> out(nk);
  for (int k = 0; k < nk; ++k) out[k] = batch_stats(series[k]);
  return out;
}

CouplingPair estimate_coupling_pair(int box, double p, Site s, Site t,
                                    long n_samples, long burn_in,
                                    uint64_t seed) {
  if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");
  const auto inside = [&](Site u) {
    return u.x >= 0 && u.y >= 0 && u.x < box && u.y < box;
  };
  if (!inside(s) || !inside(t))
    throw std::invalid_argument("coupling pair: sites outside the box");
  const Params pr = params_from_p(p);

  SpinConfig sc = SpinConfig::all_up(box, box);
  CounterRng rng(seed, 0);
  run_burn_in(sc, pr.beta, SpinBc::free_bc, rng, burn_in,
              [&](const SpinConfig& cfg) {
                return (double)cfg.s[cfg.idx(s.x, s.y)] *
                       cfg.s[cfg.idx(t.x, t.y)];
              });

  std::vector<double> xs_spin, xs_fk, xs_diff;
  xs_spin.reserve(n_samples);
  xs_fk.reserve(n_samples);
  xs_diff.reserve(n_samples);
  UF uf;
  for (long i = 0; i < n_samples; ++i) {
    sw_step(sc, pr.beta, SpinBc::free_bc, rng);
    const double sp =
        (double)sc.s[sc.idx(s.x, s.y)] * sc.s[sc.idx(t.x, t.y)];
    const auto open = fk_from_spins(sc, p, rng);
    unite_open_bonds(sc, open, uf);
    const double fk =
        uf.find(sc.idx(s.x, s.y)) == uf.find(sc.idx(t.x, t.y)) ? 1.0 : 0.0;
    xs_spin.push_back(sp);
    xs_fk.push_back(fk);
    xs_diff.push_back(sp - fk);
  }
  return {batch_stats(xs_spin), batch_stats(xs_fk), batch_stats(xs_diff)};
}

McEstimate estimate_strip_crossing(int height, int halfwidth, double p,
                                   long n_samples, uint64_t seed,
                                   long* burn_in_used) {
  if (height < 0 || halfwidth < 1)
    throw std::invalid_argument("strip: need height >= 0, halfwidth >= 1");
  if (n_samples < 16) throw std::invalid_argument("need at least 16 samples");
  const Params pr = params_from_p(p);
  const int w = 2 * halfwidth + 1, h = height + 1;
  const int mid = halfwidth + w * height;

  SpinConfig sc = SpinConfig::all_up(w, h);
  CounterRng rng(seed, 0);
  const long used =
      run_burn_in(sc, pr.beta, SpinBc::strip_dobrushin, rng, -1,
                  [&](const SpinConfig& cfg) { return (double)cfg.s[mid]; });
  if (burn_in_used) *burn_in_used = used;

  std::vector<double> xs;
  xs.reserve(n_samples);
  UF uf;
  for (long i = 0; i < n_samples; ++i) {
    sw_step(sc, pr.beta, SpinBc::strip_dobrushin, rng);
    const auto open = fk_from_spins(sc, p, rng);
    unite_open_bonds(sc, open, uf);
    for (int x = 0; x + 1 < w; ++x) uf.unite(x, x + 1);  // wired bottom
    xs.push_back(uf.find(mid) == uf.find(0) ? 1.0 : 0.0);
  }
  return batch_stats(xs);
}

RateFit fit_decay_rate(const std::vector<std::pair<int, McEstimate>>& pts,
                       double theta) {
  std::vector<double> xs, ys, sig;
  int dropped = 0;
  for (const auto& [n, e] : pts) {
    if (!(e.mean > 0)) {
      std::fprintf(stderr,
                   "fit_decay_rate: dropping n=%d, nonpositive mean %.3g\n", n,
                   e.mean);
      ++dropped;
      continue;
    }
    xs.push_back(n);
    ys.push_back(-std::log(e.mean) - theta * std::log((double)n));
    sig.push_back(e.std_error / e.mean);
  }
  const int k = (int)xs.size();
  if (k < 4)
    throw std::invalid_argument(
        "fit_decay_rate: need at least 4 points with positive mean");

  const bool weighted =
      *std::min_element(sig.begin(), sig.end()) > 0;
  std::vector<double> wts(k, 1.0);
  if (weighted)
    for (int i = 0; i < k; ++i) wts[i] = 1 / (sig[i] * sig[i]);

  double sw = 0, sx = 0, sy = 0;
  for (int i = 0; i < k; ++i) sw += wts[i], sx += wts[i] * xs[i],
      sy += wts[i] * ys[i];
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < k; ++i) {
    sxx += wts[i] * (xs[i] - xbar) * (xs[i] - xbar);
    sxy += wts[i] * (xs[i] - xbar) * (ys[i] - ybar);
  }
  RateFit f;
  f.rate = sxy / sxx;
  f.points_used = k;
  f.points_dropped = dropped;
  if (weighted) {
    f.std_error = std::sqrt(1 / sxx);
  } else {
    double rss = 0;
    for (int i = 0; i < k; ++i) {
      const double r = ys[i] - ybar - f.rate * (xs[i] - xbar);
      rss += r * r;
    }
    f.std_error = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
  }
  return f;
}

}  // namespace fk
