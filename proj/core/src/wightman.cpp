#include "dsqft/wightman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsqft/specfun.hpp"

namespace dsqft {

namespace {
constexpr cplx kMinusHalfI{0.0, -0.5};
}

const char* to_string(SlotTag tag) {
  switch (tag) {
    case SlotTag::In: return "in";
    case SlotTag::Loc: return "loc";
    case SlotTag::Out: return "out";
    case SlotTag::Current: return "current";
  }
  return "?";
}

FieldSlot in_slot(TestFunction f) { return {SlotTag::In, std::move(f), CurrentForm::Plain}; }
FieldSlot loc_slot(TestFunction f) { return {SlotTag::Loc, std::move(f), CurrentForm::Plain}; }
FieldSlot out_slot(TestFunction f) { return {SlotTag::Out, std::move(f), CurrentForm::Plain}; }
FieldSlot current_slot(TestFunction f, CurrentForm form) {
  return {SlotTag::Current, std::move(f), form};
}

// node values of one separable factor: per term, tau factors on the main and
// companion rules and zonal factors on the sphere nodes
struct WightmanEngine::SlotCache {
  std::vector<std::vector<cplx>> tau_main;
  std::vector<std::vector<cplx>> tau_comp;
  std::vector<std::vector<double>> zon;
  double kernel_err = 0.0;

  std::size_t n_terms() const { return tau_main.size(); }
};

namespace {

double dot_clamped(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::max(-1.0, std::min(1.0, dot));
}

}  // namespace

WightmanEngine::WightmanEngine(const ModelParams& params, ModeSet& modes, QuadratureGrid grid)
    : params_(params), modes_(&modes), grid_(std::move(grid)) {
  params_.validate();
  if (grid_.d != params_.d) throw std::invalid_argument("WightmanEngine: grid dimension mismatch");
}

// caches are built through these two helpers so that identical inputs take
// identical code paths (the Yang-Feldman check asserts bitwise equality)
static void fill_from_kernel(WightmanEngine::SlotCache& cache, const SmearedKernel& K,
                             const QuadratureGrid& grid) {
  const std::size_t nt = K.n_terms();
  cache.tau_main.assign(nt, {});
  cache.tau_comp.assign(nt, {});
  cache.zon.assign(nt, {});
  for (std::size_t i = 0; i < nt; ++i) {
    cache.tau_main[i].resize(grid.tau_nodes.size());
    for (std::size_t j = 0; j < grid.tau_nodes.size(); ++j)
      cache.tau_main[i][j] = K.tau_factor(i, grid.tau_nodes[j]);
    cache.tau_comp[i].resize(grid.tau_nodes_c.size());
    for (std::size_t j = 0; j < grid.tau_nodes_c.size(); ++j)
      cache.tau_comp[i][j] = K.tau_factor(i, grid.tau_nodes_c[j]);
    cache.zon[i].resize(grid.sphere_nodes.size());
    for (std::size_t m = 0; m < grid.sphere_nodes.size(); ++m)
      cache.zon[i][m] = K.zonal(i, grid.sphere_nodes[m]);
  }
  cache.kernel_err = K.error_estimate();
}

static void fill_from_testfn(WightmanEngine::SlotCache& cache, const TestFunction& f,
                             const QuadratureGrid& grid, int d) {
  const std::size_t nt = f.terms.size();
  cache.tau_main.assign(nt, {});
  cache.tau_comp.assign(nt, {});
  cache.zon.assign(nt, {});
  for (std::size_t i = 0; i < nt; ++i) {
    const TfTerm& t = f.terms[i];
    cache.tau_main[i].resize(grid.tau_nodes.size());
    for (std::size_t j = 0; j < grid.tau_nodes.size(); ++j)
      cache.tau_main[i][j] = t.coef * t.a(grid.tau_nodes[j]);
    cache.tau_comp[i].resize(grid.tau_nodes_c.size());
    for (std::size_t j = 0; j < grid.tau_nodes_c.size(); ++j)
      cache.tau_comp[i][j] = t.coef * t.a(grid.tau_nodes_c[j]);
    cache.zon[i].resize(grid.sphere_nodes.size());
    for (std::size_t m = 0; m < grid.sphere_nodes.size(); ++m)
      cache.zon[i][m] = zonal_factor(t.s, d, dot_clamped(grid.sphere_nodes[m], t.pole));
  }
  cache.kernel_err = 0.0;
}

NPointResult WightmanEngine::mixed_product_integral(
    const std::vector<const SlotCache*>& factors, double prefactor) const {
  const std::size_t n_tau = grid_.tau_nodes.size();
  const std::size_t n_tauc = grid_.tau_nodes_c.size();
  const std::size_t n_sph = grid_.sphere_nodes.size();
  const std::size_t n_f = factors.size();

  std::vector<double> rho(n_tau), rho_c(n_tauc);
  for (std::size_t j = 0; j < n_tau; ++j) rho[j] = volume_weight(grid_.tau_nodes[j], params_);
  for (std::size_t j = 0; j < n_tauc; ++j) rho_c[j] = volume_weight(grid_.tau_nodes_c[j], params_);

  std::vector<cplx> phi(n_sph), phi_c(n_sph);
  std::vector<double> phi_abs(n_sph);
  std::vector<double> vmax(n_f, 0.0);

  std::vector<cplx> v(n_tau);
  std::vector<cplx> integrand(n_tau), integrand_c(n_tauc);
  std::vector<double> integrand_abs(n_tau);
  for (std::size_t m = 0; m < n_sph; ++m) {
    std::fill(integrand.begin(), integrand.end(), cplx(1.0, 0.0));
    std::fill(integrand_abs.begin(), integrand_abs.end(), 1.0);
    for (std::size_t l = 0; l < n_f; ++l) {
      const SlotCache& c = *factors[l];
      for (std::size_t j = 0; j < n_tau; ++j) {
        cplx val(0.0, 0.0);
        for (std::size_t i = 0; i < c.n_terms(); ++i)
          val += c.tau_main[i][j] * c.zon[i][m];
        integrand[j] *= val;
        const double av = std::abs(val);
        integrand_abs[j] *= av;
        vmax[l] = std::max(vmax[l], av);
      }
    }
    std::fill(integrand_c.begin(), integrand_c.end(), cplx(1.0, 0.0));
    for (std::size_t l = 0; l < n_f; ++l) {
      const SlotCache& c = *factors[l];
      for (std::size_t j = 0; j < n_tauc; ++j) {
        cplx val(0.0, 0.0);
        for (std::size_t i = 0; i < c.n_terms(); ++i)
          val += c.tau_comp[i][j] * c.zon[i][m];
        integrand_c[j] *= val;
      }
    }
    for (std::size_t j = 0; j < n_tau; ++j) {
      integrand[j] *= grid_.tau_weights[j] * rho[j];
      integrand_abs[j] *= grid_.tau_weights[j] * rho[j];
    }
    for (std::size_t j = 0; j < n_tauc; ++j) integrand_c[j] *= grid_.tau_weights_c[j] * rho_c[j];
    phi[m] = pairwise_sum(integrand);
    phi_c[m] = pairwise_sum(integrand_c);
    phi_abs[m] = pairwise_sum(integrand_abs);
  }

  std::vector<cplx> wphi(n_sph), wdiff(n_sph);
  std::vector<double> wabs(n_sph);
  for (std::size_t m = 0; m < n_sph; ++m) {
    wphi[m] = grid_.sphere_weights[m] * phi[m];
    wdiff[m] = grid_.sphere_weights[m] * (phi[m] - phi_c[m]);
    wabs[m] = grid_.sphere_weights[m] * phi_abs[m];
  }
  const cplx value = pairwise_sum(wphi);
  const double tau_err = std::abs(pairwise_sum(wdiff));
  const double abs_integral = pairwise_sum(wabs);

  // antithetic-pair Monte Carlo error on the sphere
  const std::size_t n_pairs = n_sph / 2;
  const cplx mean = value / sphere_area(params_.d);
  double var = 0.0;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    const cplx psi = 0.5 * (phi[2 * k] + phi[2 * k + 1]);
    var += std::norm(psi - mean);
  }
  var /= std::max<std::size_t>(1, n_pairs - 1);
  const double sph_err = sphere_area(params_.d) * std::sqrt(var / n_pairs);

  double kerr = 0.0;
  for (std::size_t l = 0; l < n_f; ++l)
    if (vmax[l] > 0.0) kerr += factors[l]->kernel_err / vmax[l];
  kerr *= abs_integral;

  NPointResult res;
  res.value = prefactor * value;
  res.error = std::abs(prefactor) * (tau_err + sph_err + kerr + 1e-300);
  return res;
}

NPointResult WightmanEngine::truncated_npoint(const std::vector<FieldSlot>& slots) const {
  const int n = static_cast<int>(slots.size());
  if (n < 2) throw std::invalid_argument("truncated_npoint: n >= 2 required");

  const double b2m2 = (params_.b * params_.b) / (params_.m * params_.m);

  if (n == 2) {
    auto effective = [&](const FieldSlot& s) -> TestFunction {
      if (s.tag == SlotTag::Current && s.current_form == CurrentForm::Plain)
        return apply_kg(s.f, params_);
      return s.f;  // retarded/advanced-smeared currents collapse back to f
    };
    const ValErr ve = D_plus(effective(slots[0]), effective(slots[1]), params_, *modes_);
    NPointResult res;
    res.value = b2m2 * ve.value;
    res.error = b2m2 * ve.error;
    res.term_breakdown = {res.value};
    res.term_slot = {0};
    res.grid_warning = res.error > 0.1 * std::abs(res.value) && res.value != cplx(0, 0);
    return res;
  }

  int n_current = 0;
  for (const FieldSlot& s : slots)
    if (s.tag == SlotTag::Current) ++n_current;

  NPointResult res;
  if (n_current >= 2) {
    res.exact_zero = true;  // two or more currents vanish identically
    return res;
  }

  // per-slot kernels for the non-distinguished positions
  std::vector<SlotCache> dminus(n), dplus(n);
  for (int l = 0; l < n; ++l) {
    fill_from_kernel(dminus[l], SmearedKernel(KernelKind::Dminus, slots[l].f, params_, *modes_),
                     grid_);
    fill_from_kernel(dplus[l], SmearedKernel(KernelKind::Dplus, slots[l].f, params_, *modes_),
                     grid_);
  }

  auto own_cache = [&](int k) -> SlotCache {
    SlotCache c;
    const FieldSlot& s = slots[k];
    if (s.tag == SlotTag::Loc) {
      fill_from_kernel(c, SmearedKernel(KernelKind::Gret, s.f, params_, *modes_), grid_);
    } else if (s.tag == SlotTag::Out) {
      fill_from_kernel(c, SmearedKernel(KernelKind::Dcomm, s.f, params_, *modes_), grid_);
    } else if (s.tag == SlotTag::Current) {
      switch (s.current_form) {
        case CurrentForm::Plain:
          fill_from_testfn(c, s.f, grid_, params_.d);
          break;
        case CurrentForm::RetardedSmear:
          fill_from_kernel(c, SmearedKernel(KernelKind::Gret, s.f, params_, *modes_), grid_);
          break;
        case CurrentForm::AdvancedSmear:
          fill_from_kernel(c, SmearedKernel(KernelKind::Gadv, s.f, params_, *modes_), grid_);
          break;
      }
    }
    return c;
  };

  std::vector<int> k_list;
  if (n_current == 1) {
    for (int k = 0; k < n; ++k)
      if (slots[k].tag == SlotTag::Current) k_list.push_back(k);
  } else {
    for (int k = 0; k < n; ++k)
      if (slots[k].tag == SlotTag::Loc || slots[k].tag == SlotTag::Out) k_list.push_back(k);
  }

  if (k_list.empty()) {
    res.exact_zero = true;  // all-In truncated functions vanish for n >= 3
    return res;
  }

  const double bn = params_.bn(n);
  std::vector<cplx> terms;
  double err = 0.0;
  for (const int k : k_list) {
    const SlotCache own = own_cache(k);
    std::vector<const SlotCache*> factors;
    factors.reserve(n);
    for (int l = 0; l < k; ++l) factors.push_back(&dminus[l]);
    factors.push_back(&own);
    for (int l = k + 1; l < n; ++l) factors.push_back(&dplus[l]);
    const NPointResult part = mixed_product_integral(factors, bn);
    terms.push_back(part.value);
    res.term_slot.push_back(k);
    err += part.error;
  }
  res.term_breakdown = terms;
  res.value = pairwise_sum(terms);
  res.error = err;
  res.grid_warning = res.error > 0.1 * std::abs(res.value) && std::abs(res.value) > 0.0;
  return res;
}

NPointResult WightmanEngine::smatrix_element(const std::vector<TestFunction>& in_fns,
                                             const std::vector<TestFunction>& out_fns) const {
  const int k = static_cast<int>(in_fns.size());
  const int n = k + static_cast<int>(out_fns.size());
  if (n < 3) throw std::invalid_argument("smatrix_element: |in| + |out| >= 3 required");

  NPointResult res;
  if (out_fns.empty()) {
    res.exact_zero = true;  // telescope degenerates, the two bracket terms coincide
    res.term_breakdown = {cplx(0, 0), cplx(0, 0)};
    res.term_slot = {k, n};
    return res;
  }

  std::vector<const TestFunction*> fns;
  for (const TestFunction& f : in_fns) fns.push_back(&f);
  for (const TestFunction& f : out_fns) fns.push_back(&f);

  std::vector<SlotCache> dminus(n), dplus(n);
  for (int l = 0; l < n; ++l) {
    fill_from_kernel(dminus[l], SmearedKernel(KernelKind::Dminus, *fns[l], params_, *modes_),
                     grid_);
    fill_from_kernel(dplus[l], SmearedKernel(KernelKind::Dplus, *fns[l], params_, *modes_),
                     grid_);
  }
  auto p_integral = [&](int j) {
    std::vector<const SlotCache*> factors;
    for (int l = 0; l < n; ++l) factors.push_back(l < j ? &dminus[l] : &dplus[l]);
    return mixed_product_integral(factors, 1.0);
  };
  const NPointResult pk = p_integral(k);
  const NPointResult pn = p_integral(n);

  const double bn = params_.bn(n);
  const cplx t1 = bn * kMinusHalfI * pk.value;
  const cplx t2 = -bn * kMinusHalfI * pn.value;
  res.value = t1 + t2;
  res.error = 0.5 * bn * (pk.error + pn.error);
  res.term_breakdown = {t1, t2};
  res.term_slot = {k, n};
  res.grid_warning = res.error > 0.1 * std::abs(res.value) && std::abs(res.value) > 0.0;
  return res;
}

NPointResult WightmanEngine::out_npoint(const std::vector<TestFunction>& real_fns) const {
  if (static_cast<int>(real_fns.size()) < 3)
    throw std::invalid_argument("out_npoint: n >= 3 required");
  for (const TestFunction& f : real_fns)
    if (!f.is_real(0.0)) throw std::invalid_argument("out_npoint: test functions must be real");
  std::vector<FieldSlot> slots;
  slots.reserve(real_fns.size());
  for (const TestFunction& f : real_fns) slots.push_back(out_slot(f));
  return truncated_npoint(slots);
}

ValErr WightmanEngine::full_vev(const std::vector<FieldSlot>& slots) const {
  const int n = static_cast<int>(slots.size());
  if (n == 0) return {cplx(1.0, 0.0), 0.0};

  SubsetTable trunc;
  std::map<std::vector<int>, double> errs;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (idx.size() == 1) {
      trunc[idx] = cplx(0.0, 0.0);  // <O, phi(f) O>^T = 0
      errs[idx] = 0.0;
      continue;
    }
    std::vector<FieldSlot> sub;
    for (int i : idx) sub.push_back(slots[i]);
    const NPointResult r = truncated_npoint(sub);
    trunc[idx] = r.value;
    errs[idx] = r.error;
  }

  cplx total(0.0, 0.0);
  double err = 0.0;
  for (const Partition& part : set_partitions(n)) {
    cplx prod(1.0, 0.0);
    for (const std::vector<int>& blk : part) prod *= trunc.at(blk);
    total += prod;
    for (std::size_t b = 0; b < part.size(); ++b) {
      double contrib = errs.at(part[b]);
      for (std::size_t c = 0; c < part.size(); ++c)
        if (c != b) contrib *= std::abs(trunc.at(part[c]));
      err += contrib;
    }
  }
  return {total, err};
}

WightmanEngine::HermiticityReport WightmanEngine::verify_hermiticity(
    const std::vector<FieldSlot>& slots, double rel_tol) const {
  std::vector<FieldSlot> rev(slots.rbegin(), slots.rend());
  for (FieldSlot& s : rev) s.f = conjugate(s.f);
  HermiticityReport rep;
  rep.lhs = truncated_npoint(slots).value;
  rep.rhs = std::conj(truncated_npoint(rev).value);
  rep.diff = std::abs(rep.lhs - rep.rhs);
  rep.scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
  rep.pass = rep.diff <= rel_tol * rep.scale;
  return rep;
}

WightmanEngine::RotationReport WightmanEngine::verify_rotation_invariance(
    const std::vector<FieldSlot>& slots, const std::vector<double>& R, double rel_tol) const {
  std::vector<FieldSlot> rotated = slots;
  for (FieldSlot& s : rotated) s.f = rotate(s.f, R);
  WightmanEngine rotated_engine(params_, *modes_, rotate_grid(grid_, R));
  RotationReport rep;
  rep.original = truncated_npoint(slots).value;
  rep.rotated = rotated_engine.truncated_npoint(rotated).value;
  rep.diff = std::abs(rep.original - rep.rotated);
  rep.tol = rel_tol * std::max(std::abs(rep.original), 1e-300);
  rep.pass = rep.diff <= rep.tol;
  return rep;
}

WightmanEngine::RotationReport WightmanEngine::verify_rotation_invariance(
    const std::vector<FieldSlot>& slots, const std::vector<double>& R,
    const QuadratureGrid& other_grid) const {
  std::vector<FieldSlot> rotated = slots;
  for (FieldSlot& s : rotated) s.f = rotate(s.f, R);
  WightmanEngine other(params_, *modes_, other_grid);
  const NPointResult a = truncated_npoint(slots);
  const NPointResult b = other.truncated_npoint(rotated);
  RotationReport rep;
  rep.original = a.value;
  rep.rotated = b.value;
  rep.diff = std::abs(a.value - b.value);
  rep.tol = 2.0 * (a.error + b.error) + 1e-14 * std::abs(a.value);
  rep.pass = rep.diff <= rep.tol;
  return rep;
}

namespace {

struct CapHull {
  double lo, hi;
  std::vector<std::vector<double>> poles;
  double cap;
};

CapHull hull_of(const TestFunction& f, double cap_radius) {
  CapHull h;
  h.lo = f.tau_lo();
  h.hi = f.tau_hi();
  h.cap = cap_radius;
  for (const TfTerm& t : f.terms) h.poles.push_back(t.pole);
  return h;
}

double min_angle_to_poles(const CapHull& h, std::span<const double> alpha) {
  double best = std::numbers::pi;
  for (const auto& pole : h.poles) best = std::min(best, sphere_angle(alpha, pole));
  return best;
}

bool point_in_hull(const CapHull& h, const DeSitterPoint& y) {
  return y.tau >= h.lo && y.tau <= h.hi && min_angle_to_poles(h, y.alpha) <= h.cap;
}

// conformal causal structure: z in closure V^+(y) iff angle(alpha_z, alpha_y)
// <= tau_z - tau_y
bool future_cone_hits(const CapHull& h, const DeSitterPoint& y) {
  if (h.hi < y.tau) return false;
  const double a_min = std::max(0.0, min_angle_to_poles(h, y.alpha) - h.cap);
  return h.hi - y.tau >= a_min;
}

bool past_cone_hits(const CapHull& h, const DeSitterPoint& y) {
  if (h.lo > y.tau) return false;
  const double a_min = std::max(0.0, min_angle_to_poles(h, y.alpha) - h.cap);
  return y.tau - h.lo >= a_min;
}

int classify_case(const CapHull& hf, const CapHull& hh, const DeSitterPoint& y) {
  const bool f_fut = future_cone_hits(hf, y);
  const bool f_past = past_cone_hits(hf, y);
  const bool h_fut = future_cone_hits(hh, y);
  const bool h_past = past_cone_hits(hh, y);
  const bool in_f = point_in_hull(hf, y);
  if (!f_fut && !f_past && !h_fut && !h_past) return 1;
  if (in_f) return 2;
  if (f_fut && f_past) return 3;
  if (f_past && !f_fut) return 4;
  if (f_fut && !f_past) return 5;
  return 0;
}

}  // namespace

bool spacelike_hulls(const TestFunction& f, const TestFunction& h, const ModelParams& params,
                     double cap_radius) {
  const CapHull hf = hull_of(f, cap_radius);
  const CapHull hh = hull_of(h, cap_radius);
  // corner sampling: tau endpoints/midpoint x cap boundary directions
  auto corner_dirs = [&](const CapHull& hull) {
    std::vector<std::vector<double>> dirs;
    for (const auto& pole : hull.poles) {
      dirs.push_back(pole);
      const int d = static_cast<int>(pole.size());
      for (int axis = 0; axis < d; ++axis) {
        std::vector<double> e(d, 0.0);
        e[axis] = 1.0;
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += e[i] * pole[i];
        std::vector<double> perp(d);
        double n2 = 0.0;
        for (int i = 0; i < d; ++i) {
          perp[i] = e[i] - dot * pole[i];
          n2 += perp[i] * perp[i];
        }
        if (n2 < 1e-20) continue;
        for (int i = 0; i < d; ++i) perp[i] /= std::sqrt(n2);
        for (const double sgn : {1.0, -1.0}) {
          std::vector<double> v(d);
          for (int i = 0; i < d; ++i)
            v[i] = std::cos(hull.cap) * pole[i] + sgn * std::sin(hull.cap) * perp[i];
          dirs.push_back(std::move(v));
        }
      }
    }
    return dirs;
  };
  const auto df = corner_dirs(hf);
  const auto dh = corner_dirs(hh);
  const int d = params.d;
  for (const double tf : {hf.lo, 0.5 * (hf.lo + hf.hi), hf.hi}) {
    for (const double th : {hh.lo, 0.5 * (hh.lo + hh.hi), hh.hi}) {
      for (const auto& af : df) {
        for (const auto& ah : dh) {
          const auto res = causal_classify(make_point(tf, af, d), make_point(th, ah, d), params);
          if (res.rel != CausalRelation::Spacelike || res.in_tolerance_band) return false;
        }
      }
    }
  }
  return true;
}

WightmanEngine::LocalityReport WightmanEngine::locality_bracket(
    const TestFunction& f, const TestFunction& h, KernelKind k_kind, int n_samples,
    double cap_radius, std::uint64_t seed, bool require_spacelike) const {
  if (k_kind != KernelKind::Gret && k_kind != KernelKind::Dcomm)
    throw std::invalid_argument("locality_bracket: kernel must be Gret or Dcomm");
  if (require_spacelike && !spacelike_hulls(f, h, params_, cap_radius))
    throw std::invalid_argument("locality_bracket: supports are not spacelike separated");

  const SmearedKernel Kf(k_kind, f, params_, *modes_);
  const SmearedKernel Kh(k_kind, h, params_, *modes_);
  const SmearedKernel Dp_f(KernelKind::Dplus, f, params_, *modes_);
  const SmearedKernel Dm_f(KernelKind::Dminus, f, params_, *modes_);
  const SmearedKernel Dp_h(KernelKind::Dplus, h, params_, *modes_);
  const SmearedKernel Dm_h(KernelKind::Dminus, h, params_, *modes_);

  const CapHull hf = hull_of(f, cap_radius);
  const CapHull hh = hull_of(h, cap_radius);

  LocalityReport rep;
  rep.n_samples = n_samples;
  Rng64 rng(seed);
  const double span = grid_.tau_hi() - grid_.tau_lo();
  for (int it = 0; it < n_samples; ++it) {
    const double tau = grid_.tau_lo() + span * rng.next_double();
    std::vector<double> alpha(params_.d);
    double n2 = 0.0;
    for (int i = 0; i < params_.d; ++i) {
      alpha[i] = rng.next_gaussian();
      n2 += alpha[i] * alpha[i];
    }
    for (double& c : alpha) c /= std::sqrt(n2);
    const DeSitterPoint y{tau, alpha};

    const cplx kf = Kf.eval(y), kh = Kh.eval(y);
    const cplx dpf = Dp_f.eval(y), dmf = Dm_f.eval(y);
    const cplx dph = Dp_h.eval(y), dmh = Dm_h.eval(y);
    const cplx bracket = kf * dph + dmf * kh - kh * dpf - dmh * kf;

    const double scale = std::abs(kf * dph) + std::abs(dmf * kh) + std::abs(kh * dpf) +
                         std::abs(dmh * kf);
    const double bound = Kf.error_estimate() * (std::abs(dph) + std::abs(dmh)) +
                         Kh.error_estimate() * (std::abs(dmf) + std::abs(dpf)) +
                         Dp_h.error_estimate() * std::abs(kf) +
                         Dm_h.error_estimate() * std::abs(kf) +
                         Dp_f.error_estimate() * std::abs(kh) +
                         Dm_f.error_estimate() * std::abs(kh) + 1e-13 * scale + 1e-300;
    rep.max_bracket = std::max(rep.max_bracket, std::abs(bracket));
    rep.error_bound = std::max(rep.error_bound, bound);
    const int cs = classify_case(hf, hh, y);
    ++rep.case_count[cs >= 0 && cs <= 5 ? cs : 0];
    if (std::abs(bracket) > bound) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

WightmanEngine::YangFeldmanReport WightmanEngine::yang_feldman_check(
    const std::vector<TestFunction>& fns, int k) const {
  const int n = static_cast<int>(fns.size());
  if (k < 0 || k >= n) throw std::invalid_argument("yang_feldman_check: k out of range");
  std::vector<FieldSlot> all_loc, with_in, with_current;
  for (int l = 0; l < n; ++l) {
    all_loc.push_back(loc_slot(fns[l]));
    with_in.push_back(l == k ? in_slot(fns[l]) : loc_slot(fns[l]));
    with_current.push_back(l == k ? current_slot(fns[l], CurrentForm::RetardedSmear)
                                  : loc_slot(fns[l]));
  }
  const NPointResult full = truncated_npoint(all_loc);
  const NPointResult in_var = truncated_npoint(with_in);
  const NPointResult cur_var = truncated_npoint(with_current);

  YangFeldmanReport rep;
  rep.in_variant = in_var.value;
  rep.current_term = cur_var.value;
  cplx loc_k(0, 0), others(0, 0);
  bool exact = true;
  std::size_t in_idx = 0;
  for (std::size_t t = 0; t < full.term_breakdown.size(); ++t) {
    if (full.term_slot[t] == k) {
      loc_k = full.term_breakdown[t];
    } else {
      others += full.term_breakdown[t];
      if (in_idx < in_var.term_breakdown.size()) {
        exact = exact && (full.term_breakdown[t] == in_var.term_breakdown[in_idx]);
        ++in_idx;
      }
    }
  }
  rep.loc_term = loc_k;
  rep.loc_others = others;
  exact = exact && (cur_var.term_breakdown.size() == 1) &&
          (loc_k == cur_var.term_breakdown[0]);
  rep.exact = exact;
  return rep;
}

}  // namespace dsqft
