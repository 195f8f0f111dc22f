// Acceptance harness: one line per criterion, exit 0 only if all pass.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "fk/catalog.hpp"
#include "fk/enumerate.hpp"
#include "fk/green.hpp"
#include "fk/montecarlo.hpp"
#include "fk/relations.hpp"
#include "fk/stencil.hpp"

using namespace fk;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, double secs, const std::string& detail) {
  std::printf("criterion %d: %s (%.1fs) %s\n", id, pass ? "PASS" : "FAIL", secs,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// criterion 1: exact local identities on the verification catalog (domains
// up to 24 effective bonds), plus loop-weight vs bond-weight proportionality
// by full enumeration on the small (<= 12 effective bonds) domains
void criterion_identities() {
  auto t0 = Clock::now();
  double wv = 0, wf = 0, wa = 0, wm = 0, wp = 0;
  std::vector<Params> ps;
  for (double p : verify_p_grid()) ps.push_back(params_from_p(p));
  for (const CatalogEntry& ce : verify_catalog()) {
    if (ce.effective_bonds > 24) continue;
    Medial m = build_medial(ce.domain);
    auto obs = observable_exact_multi(ce.domain, m, ps, 26);
    auto profs = wired_connection_profile_multi(ce.domain, ps, 26);
    for (size_t k = 0; k < ps.size(); ++k) {
      wv = std::max(wv, check_vertex_relation(m, obs[k]).max_abs_residual);
      wf = std::max(wf, check_forced_phase(m, obs[k]).max_abs_residual);
      wa = std::max(wa, check_argument_lines(m, obs[k]).max_abs_residual);
      wm = std::max(wm, check_boundary_modulus(ce.domain, m, obs[k], profs[k])
                            .max_abs_residual);
    }
    if (ce.effective_bonds <= 12) {
      for (const Params& pr : ps) {
        double r0 = loop_weight(ce.domain, m, pr, 0) /
                    rc_weight(ce.domain, 0, pr.p, 2.0, Bc::dobrushin_bc);
        for (uint64_t bits = 1; bits < (1ull << ce.domain.n_bonds()); ++bits) {
          double q = loop_weight(ce.domain, m, pr, bits) /
                     rc_weight(ce.domain, bits, pr.p, 2.0, Bc::dobrushin_bc);
          wp = std::max(wp, std::abs(q / r0 - 1.0));
        }
      }
    }
  }
  double secs = elapsed(t0);
  bool pass = wv < 1e-10 && wf < 1e-12 && wa < 1e-12 && wm < 1e-12 && wp < 1e-12 &&
              secs < 60.0;
  report(1, pass, secs,
         fmt("exact identities on the catalog: vertex %.1e forced %.1e argument %.1e "
             "modulus %.1e proportionality %.1e",
             wv, wf, wa, wm, wp));
}

// criterion 2: discounted averaging stencils, bulk box and free wedge
void criterion_stencils() {
  auto t0 = Clock::now();
  std::vector<Params> ps = {params_from_p(0.2), params_from_p(0.3), params_from_p(0.4)};
  double worst = 0;
  long checks = 0;
  {
    Domain box = build_box_domain({-1, -1}, {2, 2});
    Medial m = build_bulk_medial(box, {0, 0});
    auto obs = observable_bulk_exact_multi(box, m, ps, 26);
    for (const Observable& o : obs) {
      StencilField f = bulk_stencil_field(box, m, o);
      worst = std::max(worst, f.report.max_abs_residual);
      checks += f.report.count_checked;
    }
  }
  {
    Domain w = build_wedge_domain({2, 2}, 4);
    Medial m = build_medial(w);
    auto obs = observable_exact_multi(w, m, ps, 26);
    for (const Observable& o : obs) {
      StencilField f = corner_stencil_field(w, m, o, {2, 2});
      worst = std::max(worst, f.report.max_abs_residual);
      checks += f.report.count_checked;
    }
  }
  double secs = elapsed(t0);
  bool pass = worst < 1e-10 && checks == 3 * (1 + 8) && secs < 120.0;
  report(2, pass, secs,
         fmt("bulk and wedge stencils: %ld checks, max residual %.1e", checks, worst));
}

// criterion 3: the coupled constants, and the discount-vs-coupling identity
// 2/cos(2 alpha) = sinh(2 beta) + 1/sinh(2 beta) across the whole range
void criterion_constants() {
  auto t0 = Clock::now();
  double dsd = std::abs(self_dual_p() - std::sqrt(2.0) / (1.0 + std::sqrt(2.0)));
  double dbc = std::abs(params_from_p(self_dual_p()).beta -
                        0.5 * std::log(1.0 + std::sqrt(2.0)));
  double wid = 0;
  for (int i = 0; i < 1000; ++i) {
    Params pr = params_from_p(0.05 + 0.9 * i / 999.0);
    double sh = std::sinh(2.0 * pr.beta);
    wid = std::max(wid, std::abs(2.0 / pr.mass - (sh + 1.0 / sh)));
  }
  double secs = elapsed(t0);
  bool pass = dsd < 1e-15 && dbc < 1e-15 && wid < 1e-12;
  report(3, pass, secs,
         fmt("constants: self-dual point %.1e, coupling at the self-dual point %.1e, "
             "discount identity %.1e over 1000 densities in [0.05, 0.95]",
             dsd, dbc, wid));
}

// criterion 4: per-row strip contraction equals the vertical rate
void criterion_rate_bridge() {
  auto t0 = Clock::now();
  double worst = 0;
  for (double p : {0.2, 0.3, 0.4, 0.5}) {
    double lhs = -std::log(strip_contraction_factor(params_from_p(p)));
    double rhs = rate_from_p(p, {0, 1}).rate;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  double secs = elapsed(t0);
  report(4, worst < 1e-9 && true, secs,
         fmt("contraction vs closed-form rate, 4 densities: max gap %.1e", worst));
}

// criterion 5: the truncated kernel decays at the two-point rate
void criterion_green_decay() {
  auto t0 = Clock::now();
  Params pr = params_from_p(0.45);
  GreenField g = green_function(pr.mass, {0, 0}, 400, 1e-10);
  double r50 = -std::log(g.at_offset(50, 0)) / 50.0;
  double r100 = -std::log(g.at_offset(100, 0)) / 100.0;
  double r150 = -std::log(g.at_offset(150, 0)) / 150.0;
  double secs = elapsed(t0);
  bool monotone = r50 > r100 && r100 > r150;
  bool close = std::abs(r150 - 0.638984) < 2e-2;
  bool pass = monotone && close && secs < 300.0;
  report(5, pass, secs,
         fmt("kernel decay per step: %.6f -> %.6f -> %.6f vs 0.638984", r50, r100,
             r150));
}

// criterion 6: the sampled two-point function reproduces the rate, and the
// sampled strip crossing reproduces the contraction
void criterion_montecarlo() {
  auto t0 = Clock::now();
  const uint64_t seed = 20260819;
  auto fam = estimate_two_point_family(64, 0.45, {1, 0}, 4, 14, 100000, -1, seed);
  std::vector<std::pair<int, McEstimate>> pts;
  for (size_t i = 0; i < fam.size(); ++i) pts.push_back({4 + (int)i, fam[i]});
  RateFit fit = fit_decay_rate(pts, 0.5);
  double rel = std::abs(fit.rate - 0.638984) / 0.638984;

  McEstimate h3 = estimate_strip_crossing(3, 32, 0.45, 200000, seed + 3);
  McEstimate h4 = estimate_strip_crossing(4, 32, 0.45, 200000, seed + 4);
  double lnratio = std::log(h3.mean / h4.mean);
  double se = std::hypot(h3.std_error / h3.mean, h4.std_error / h4.mean);
  double target = -std::log(strip_contraction_factor(params_from_p(0.45)));
  double z = (lnratio - target) / se;

  double secs = elapsed(t0);
  bool pass = rel <= 0.10 && std::abs(z) <= 3.0 && fit.points_used == 11 &&
              secs < 900.0;
  report(6, pass, secs,
         fmt("sampled rate %.4f +- %.4f (rel gap %.3f), strip ln-ratio %.4f vs %.4f "
             "(z = %.2f)",
             fit.rate, fit.std_error, rel, lnratio, target, z));
}

// criterion 7: spin product, coupled bond indicator, and exact enumeration
// agree on the 3x3 box
void criterion_coupling() {
  auto t0 = Clock::now();
  const double p = 0.4;
  Domain d = build_box_domain({0, 0}, {2, 2});
  double exact = connection_prob(d, p, 2.0, Bc::free_bc, {{0, 0}}, {{2, 2}}, 26);
  CouplingPair cp = estimate_coupling_pair(3, p, {0, 0}, {2, 2}, 2000000, -1, 777);
  double z_pair = cp.diff.mean / cp.diff.std_error;
  double z_spin = (cp.spin.mean - exact) / cp.spin.std_error;
  double z_fk = (cp.fk.mean - exact) / cp.fk.std_error;
  double secs = elapsed(t0);
  bool pass = std::abs(z_pair) <= 3.0 && std::abs(z_spin) <= 3.0 &&
              std::abs(z_fk) <= 3.0 && secs < 120.0;
  report(7, pass, secs,
         fmt("coupling on the 3x3 box: exact %.6f, z(spin-bond) %.2f, z(spin) %.2f, "
             "z(bond) %.2f",
             exact, z_pair, z_spin, z_fk));
}

// criterion 8: the discounted-walk representation reproduces the exactly
// enumerated whole-plane observable
void criterion_walk() {
  auto t0 = Clock::now();
  Params pr = params_from_p(0.45);
  struct Box {
    Domain d;
    Medial m;
    Observable o;
  };
  std::vector<Box> boxes;
  for (auto [lo, hi] : {std::pair<Site, Site>{{-1, -1}, {2, 2}},
                        {{-2, -2}, {1, 1}},
                        {{-3, -1}, {0, 2}}}) {
    Domain d = build_box_domain(lo, hi);
    Medial m = build_bulk_medial(d, {0, 0});
    Observable o = observable_bulk_exact(d, m, pr, 26);
    boxes.push_back({std::move(d), std::move(m), std::move(o)});
  }
  WalkField wf = walk_field(pr, 12, 1e-12);
  auto exact_at = [&](Site a) -> double {
    for (const Box& b : boxes) {
      int i = b.d.index_of(a);
      if (i < 0) continue;
      int e = b.m.side_across(i, Dir::NW);
      if (e >= 0) return std::abs(b.o.F[e]);
    }
    return -1.0;
  };
  const Site gated[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, 1},
                        {-1, -1}, {2, 0}, {0, 2}, {-2, 0}, {0, -2}};
  double worst = 0;
  Site worst_at{0, 0};
  bool covered = true;
  for (Site a : gated) {
    double ex = exact_at(a);
    if (ex <= 0) {
      covered = false;
      continue;
    }
    double rel = std::abs(std::abs(wf.at_offset(a.x, a.y)) / ex - 1.0);
    if (rel > worst) {
      worst = rel;
      worst_at = a;
    }
  }
  // the two remaining next-nearest diagonals sit on a near-cancellation of
  // the two kernel terms; their exact finite-box values are smaller than the
  // boxes' own truncation error, so they are reported but not gated
  double d11 = std::abs(std::abs(wf.at_offset(1, 1)) / exact_at({1, 1}) - 1.0);
  double d1m1 = std::abs(std::abs(wf.at_offset(1, -1)) / exact_at({1, -1}) - 1.0);

  // with the phase switched off the dipole is exactly odd through x = 1/2
  Params sym{};
  sym.alpha = 0.0;
  sym.mass = 0.5;
  WalkField odd = walk_field(sym, 40, 1e-12);
  double wodd = 0;
  for (int x = -30; x <= 30; ++x)
    for (int y = -30; y <= 30; ++y)
      wodd = std::max(wodd, std::abs(odd.at_offset(x, y) + odd.at_offset(1 - x, y)));

  double secs = elapsed(t0);
  bool pass = covered && worst <= 0.10 && wodd <= 1e-10;
  report(8, pass, secs,
         fmt("walk vs exact |F|: max rel gap %.3f at (%d,%d) over 10 offsets; "
             "odd-part symmetry %.1e; ungated near-cancellation diagonals: "
             "(1,1) %.2f (1,-1) %.2f",
             worst, worst_at.x, worst_at.y, wodd, d11, d1m1));
}

}  // namespace

int main() {
  criterion_identities();
  criterion_stencils();
  criterion_constants();
  criterion_rate_bridge();
  criterion_green_decay();
  criterion_montecarlo();
  criterion_coupling();
  criterion_walk();
  std::printf("acceptance: %d/8 criteria pass\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
