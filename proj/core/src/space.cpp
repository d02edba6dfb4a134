#include "absorder/space.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace absorder {

namespace {

void check_positive_size(int n, const char* what) {
  if (n <= 0) throw ShapeError(std::string(what) + " must be positive");
}

bool finite(const Mat& m) { return m.allFinite(); }

Eigen::SelfAdjointEigenSolver<Mat> eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return es;
}

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Clamps the spectrum of a nominally positive matrix: eigenvalues below the
// numerical noise floor (relative to the largest one) are set to zero, so the
// square root does not amplify O(eps) noise into O(sqrt(eps)) mass.
RVec clamp_psd_spectrum(RVec lam) {
  const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(lmax, 0.0);
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) < floor) lam(i) = 0.0;
  return lam;
}

}  // namespace

// --- SpaceModel --------------------------------------------------------------

SpaceModel SpaceModel::hermitian(int k) {
  check_positive_size(k, "matrix size");
  SpaceModel m;
  m.kind_ = Kind::hermitian;
  m.size_ = k;
  m.blocks_ = {k};
  return m;
}

SpaceModel SpaceModel::hermitian_blocks(std::vector<int> blocks) {
  if (blocks.empty()) throw ShapeError("block list must be nonempty");
  int total = 0;
  for (int b : blocks) {
    check_positive_size(b, "block size");
    total += b;
  }
  SpaceModel m;
  m.kind_ = Kind::hermitian;
  m.size_ = total;
  m.blocks_ = std::move(blocks);
  return m;
}

SpaceModel SpaceModel::lattice(int d) {
  check_positive_size(d, "lattice dimension");
  SpaceModel m;
  m.kind_ = Kind::lattice;
  m.size_ = d;
  return m;
}

int SpaceModel::sa_dim() const {
  if (is_lattice()) return size_;
  int dim = 0;
  for (int b : blocks_) dim += b * b;
  return dim;
}

std::string SpaceModel::descriptor() const {
  std::ostringstream os;
  if (is_lattice()) {
    os << "lattice:" << size_;
  } else {
    os << "hermitian:";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) os << "+";
      os << blocks_[i];
    }
  }
  return os.str();
}

// --- Element arithmetic ------------------------------------------------------

namespace {
void check_same_shape(const Element& a, const Element& b) {
  if (!(a.level == b.level) || a.coords.rows() != b.coords.rows() ||
      a.coords.cols() != b.coords.cols()) {
    throw ShapeError("element shapes differ");
  }
}
}  // namespace

Element operator+(const Element& a, const Element& b) {
  check_same_shape(a, b);
  return {a.coords + b.coords, a.level};
}

Element operator-(const Element& a, const Element& b) {
  check_same_shape(a, b);
  return {a.coords - b.coords, a.level};
}

Element operator-(const Element& a) { return {-a.coords, a.level}; }

Element operator*(double s, const Element& a) { return {s * a.coords, a.level}; }

// --- structure ---------------------------------------------------------------

Element unit_element(const SpaceModel& model, int level_n) {
  check_positive_size(level_n, "level");
  if (model.is_lattice()) {
    if (level_n != 1) throw LatticeUnsupported("lattice model has no matricial levels");
    return {Mat::Ones(model.ambient_size(), 1), {1, 1}};
  }
  const int k = model.ambient_size();
  return {Mat::Identity(level_n * k, level_n * k), {level_n, level_n}};
}

Element zero_element(const SpaceModel& model, Level level) {
  if (model.is_lattice()) {
    if (!(level == Level{1, 1}))
      throw LatticeUnsupported("lattice model has no matricial levels");
    return {Mat::Zero(model.ambient_size(), 1), {1, 1}};
  }
  const int k = model.ambient_size();
  return {Mat::Zero(level.m * k, level.n * k), level};
}

void validate_shape(const SpaceModel& model, const Element& v) {
  if (!finite(v.coords)) throw ShapeError("element has non-finite entries");
  if (model.is_lattice()) {
    if (!(v.level == Level{1, 1}))
      throw LatticeUnsupported("lattice model has no matricial levels");
    if (v.coords.rows() != model.ambient_size() || v.coords.cols() != 1)
      throw ShapeError("lattice element must be a d x 1 vector");
    if (v.coords.imag().cwiseAbs().maxCoeff() > 1e-12)
      throw ShapeError("lattice element must be real");
    return;
  }
  const int k = model.ambient_size();
  if (v.level.m <= 0 || v.level.n <= 0)
    throw ShapeError("level indices must be positive");
  if (v.coords.rows() != static_cast<Eigen::Index>(v.level.m) * k ||
      v.coords.cols() != static_cast<Eigen::Index>(v.level.n) * k) {
    throw ShapeError("payload shape does not match level (" +
                     std::to_string(v.level.m) + ", " + std::to_string(v.level.n) +
                     ") over " + model.descriptor());
  }
}

void project_to_pattern(const SpaceModel& model, Mat& payload, Level level) {
  if (model.is_lattice() || model.single_block()) return;
  const int k = model.ambient_size();
  // Mask allows entry ((a,p),(b,q)) iff ambient positions p, q fall in the
  // same block of the model.
  std::vector<int> block_of(k);
  int pos = 0, idx = 0;
  for (int b : model.blocks()) {
    for (int i = 0; i < b; ++i) block_of[pos++] = idx;
    ++idx;
  }
  for (int r = 0; r < payload.rows(); ++r) {
    for (int c = 0; c < payload.cols(); ++c) {
      if (block_of[r % k] != block_of[c % k]) payload(r, c) = Cplx(0, 0);
    }
  }
  (void)level;
}

bool pattern_respected(const SpaceModel& model, const Element& v, double tol) {
  if (model.is_lattice() || model.single_block()) return true;
  Mat projected = v.coords;
  project_to_pattern(model, projected, v.level);
  return (v.coords - projected).cwiseAbs().maxCoeff() <= tol;
}

bool is_self_adjoint(const SpaceModel& model, const Element& v,
                     const ToleranceConfig& cfg) {
  validate_shape(model, v);
  if (model.is_lattice()) return true;
  if (!v.level.square()) return false;
  const double scale = std::max(1.0, v.coords.cwiseAbs().maxCoeff());
  if ((v.coords - v.coords.adjoint()).cwiseAbs().maxCoeff() > cfg.scaled(scale))
    return false;
  return pattern_respected(model, v, cfg.scaled(scale));
}

void require_self_adjoint(const SpaceModel& model, const Element& v,
                          const ToleranceConfig& cfg) {
  if (!is_self_adjoint(model, v, cfg))
    throw NotSelfAdjoint("element is not self-adjoint in " + model.descriptor());
}

bool in_cone(const SpaceModel& model, const Element& v,
             const ToleranceConfig& cfg) {
  validate_shape(model, v);
  if (model.is_lattice()) {
    const RVec x = v.coords.real();
    const double scale = x.cwiseAbs().maxCoeff();
    return x.minCoeff() >= -cfg.scaled(scale);
  }
  if (!is_self_adjoint(model, v, cfg)) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(v.coords),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  const RVec lam = es.eigenvalues();
  const double scale = lam.cwiseAbs().maxCoeff();
  return lam.minCoeff() >= -cfg.scaled(scale);
}

// --- absolute value / norms --------------------------------------------------

Element abs_element(const SpaceModel& model, const Element& v) {
  validate_shape(model, v);
  if (model.is_lattice()) {
    return {v.coords.real().cwiseAbs().cast<Cplx>(), {1, 1}};
  }
  // |v| = (v* v)^{1/2} via spectral decomposition of the Gram matrix.
  // Eigenvalues are clamped at zero before the square root unless the model's
  // fault-injection knob disabled clamping.
  const Mat gram = hermitize(v.coords.adjoint() * v.coords);
  auto es = eig(gram);
  RVec lam = es.eigenvalues();
  if (model.clamp_spectrum()) lam = clamp_psd_spectrum(std::move(lam));
  const RVec s = lam.cwiseSqrt();
  Mat root = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
  root = hermitize(root);
  project_to_pattern(model, root, {v.level.n, v.level.n});
  return {std::move(root), {v.level.n, v.level.n}};
}

std::pair<Element, Element> pos_neg_parts(const SpaceModel& model,
                                          const Element& v,
                                          const ToleranceConfig& cfg) {
  require_self_adjoint(model, v, cfg);
  const Element a = abs_element(model, v);
  return {0.5 * (a + v), 0.5 * (a - v)};
}

double order_unit_norm(const SpaceModel& model, const Element& v,
                       const ToleranceConfig& cfg) {
  require_self_adjoint(model, v, cfg);
  if (model.is_lattice()) return v.coords.real().cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(v.coords),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double lower_bound_functional(const SpaceModel& model, const Element& v,
                              const ToleranceConfig& cfg) {
  require_self_adjoint(model, v, cfg);
  if (model.is_lattice())
    return std::max(0.0, -v.coords.real().minCoeff());
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(v.coords),
                                        Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

double frobenius(const Element& v) { return v.coords.norm(); }

Element sqrt_psd(const SpaceModel& model, const Element& v) {
  validate_shape(model, v);
  if (model.is_lattice())
    return {v.coords.real().cwiseMax(0.0).cwiseSqrt().cast<Cplx>(), {1, 1}};
  if (!v.level.square()) throw ShapeError("square root needs a square level");
  auto es = eig(hermitize(v.coords));
  RVec lam = es.eigenvalues();
  if (model.clamp_spectrum()) lam = clamp_psd_spectrum(std::move(lam));
  Mat root =
      es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  root = hermitize(root);
  project_to_pattern(model, root, v.level);
  return {std::move(root), v.level};
}

// --- orthogonality -----------------------------------------------------------

double perp_residual(const SpaceModel& model, const Element& u,
                     const Element& v) {
  const Element lhs = abs_element(model, u - v);
  return frobenius(lhs - (u + v));
}

namespace {
void require_cone_pair(const SpaceModel& model, const Element& u,
                       const Element& v, const ToleranceConfig& cfg) {
  if (!in_cone(model, u, cfg) || !in_cone(model, v, cfg))
    throw OutsideCone("orthogonality requires cone elements");
}
}  // namespace

bool perp(const SpaceModel& model, const Element& u, const Element& v,
          const ToleranceConfig& cfg) {
  require_cone_pair(model, u, v, cfg);
  const double scale =
      std::max({1.0, frobenius(u), frobenius(v)});
  return perp_residual(model, u, v) <= cfg.scaled(scale);
}

PerpInftyResult perp_infty_detail(const SpaceModel& model, const Element& u,
                                  const Element& v, const ToleranceConfig& cfg) {
  require_cone_pair(model, u, v, cfg);
  PerpInftyResult out;
  const double nu = order_unit_norm(model, u, cfg);
  const double nv = order_unit_norm(model, v, cfg);
  if (nu <= cfg.eps_abs || nv <= cfg.eps_abs) {
    out.verdict = true;
    return out;
  }
  const Element sum = (1.0 / nu) * u + (1.0 / nv) * v;
  out.criterion_residual = std::abs(order_unit_norm(model, sum, cfg) - 1.0);
  out.verdict = out.criterion_residual <= cfg.scaled(1.0);

  if (out.verdict) {
    // A positive verdict promises the max-formula for every (alpha, beta);
    // spot-check it on a fixed grid including sign mixes.
    static constexpr double grid[][2] = {
        {1, 1},  {1, -1}, {-1, 1},   {-1, -1},   {2, 0.5},
        {0.5, 2}, {1, 0},  {0, 1},    {-2, -3},   {0.3, -0.7},
        {5, 1},  {1, 5},  {-0.1, 4}, {3.7, -2.2}};
    for (const auto& ab : grid) {
      const Element w = ab[0] * u + ab[1] * v;
      const double lhs = order_unit_norm(model, w, cfg);
      const double rhs = std::max(std::abs(ab[0]) * nu, std::abs(ab[1]) * nv);
      if (std::abs(lhs - rhs) > cfg.scaled(std::max(1.0, rhs))) {
        out.grid_consistent = false;
        break;
      }
    }
  }
  return out;
}

bool perp_infty(const SpaceModel& model, const Element& u, const Element& v,
                const ToleranceConfig& cfg) {
  return perp_infty_detail(model, u, v, cfg).verdict;
}

PerpInftyAbsResult perp_infty_abs_detail(const SpaceModel& model,
                                         const Element& u, const Element& v,
                                         const ToleranceConfig& cfg) {
  require_cone_pair(model, u, v, cfg);
  PerpInftyAbsResult out;
  if (model.is_lattice()) {
    out.oracle_residual =
        v.coords.real().cwiseMin(u.coords.real()).cwiseAbs().maxCoeff();
    out.verdict = out.oracle_residual <=
                  cfg.scaled(std::max(frobenius(u), frobenius(v)));
  } else {
    out.oracle_residual = (u.coords * v.coords).norm();
    out.verdict = out.oracle_residual <=
                  cfg.scaled(std::max(1.0, frobenius(u) * frobenius(v)));
  }
  if (out.verdict) {
    // Randomized minorant pairs must come out infty-orthogonal.
    const int trials = std::min(8, std::max(1, cfg.samples / 25));
    RngStream rng = RngStream::derived(cfg.seed, 0x70a5);
    for (int t = 0; t < trials; ++t) {
      const Element u1 = draw_minorant(model, rng, u);
      const Element v1 = draw_minorant(model, rng, v);
      if (frobenius(u1) <= cfg.eps_abs || frobenius(v1) <= cfg.eps_abs) continue;
      if (!perp_infty(model, u1, v1, cfg)) {
        out.minorants_consistent = false;
        break;
      }
    }
  }
  return out;
}

bool perp_infty_abs(const SpaceModel& model, const Element& u, const Element& v,
                    const ToleranceConfig& cfg) {
  return perp_infty_abs_detail(model, u, v, cfg).verdict;
}

// --- draws --------------------------------------------------------------------

Mat draw_ginibre(const SpaceModel& model, RngStream& rng, Level level) {
  if (model.is_lattice()) {
    Mat g(model.ambient_size(), 1);
    for (int i = 0; i < g.rows(); ++i) g(i, 0) = Cplx(rng.gaussian(), 0.0);
    return g;
  }
  const int k = model.ambient_size();
  Mat g(level.m * k, level.n * k);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) g(r, c) = rng.cgaussian();
  project_to_pattern(model, g, level);
  return g;
}

Element draw_self_adjoint(const SpaceModel& model, RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    if (level_n != 1) throw LatticeUnsupported("lattice model has no matricial levels");
    return {draw_ginibre(model, rng, {1, 1}), {1, 1}};
  }
  Mat g = draw_ginibre(model, rng, {level_n, level_n});
  return {hermitize(g), {level_n, level_n}};
}

Element draw_psd(const SpaceModel& model, RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    Mat g = draw_ginibre(model, rng, {1, 1});
    return {g.real().cwiseAbs().cast<Cplx>(), {1, 1}};
  }
  const Mat g = draw_ginibre(model, rng, {level_n, level_n});
  Mat p = g * g.adjoint();
  project_to_pattern(model, p, {level_n, level_n});
  return {hermitize(p), {level_n, level_n}};
}

Element draw_rank_one_psd(const SpaceModel& model, RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    // Single-coordinate spike, the lattice analogue of a rank-one element.
    const int d = model.ambient_size();
    Mat x = Mat::Zero(d, 1);
    x(rng.uniform_int(0, d - 1), 0) = Cplx(rng.uniform(0.25, 2.0), 0.0);
    return {x, {1, 1}};
  }
  const int k = model.ambient_size();
  const int nblocks = static_cast<int>(model.blocks().size());
  const int chosen = rng.uniform_int(0, nblocks - 1);
  int offset = 0;
  for (int b = 0; b < chosen; ++b) offset += model.blocks()[b];
  const int bsize = model.blocks()[chosen];
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(level_n * k);
  for (int blockrow = 0; blockrow < level_n; ++blockrow)
    for (int i = 0; i < bsize; ++i)
      xi(blockrow * k + offset + i) = rng.cgaussian();
  Mat p = xi * xi.adjoint();
  project_to_pattern(model, p, {level_n, level_n});
  return {hermitize(p), {level_n, level_n}};
}

Element draw_unit_interval(const SpaceModel& model, RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    const int d = model.ambient_size();
    Mat x(d, 1);
    for (int i = 0; i < d; ++i) x(i, 0) = Cplx(rng.uniform(), 0.0);
    return {x, {1, 1}};
  }
  // (h / ||h|| + e) / 2 has spectrum inside [0, 1].
  const Element h = draw_self_adjoint(model, rng, level_n);
  const double nh = std::max(order_unit_norm(model, h), 1e-300);
  return 0.5 * ((1.0 / nh) * h + unit_element(model, level_n));
}

Element draw_projection(const SpaceModel& model, RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    const int d = model.ambient_size();
    Mat x = Mat::Zero(d, 1);
    for (int i = 0; i < d; ++i)
      if (rng.uniform() < 0.5) x(i, 0) = Cplx(1.0, 0.0);
    return {x, {1, 1}};
  }
  // Spectral cut at the median eigenvalue keeps both ranks nondegenerate.
  const Element h = draw_self_adjoint(model, rng, level_n);
  auto es = eig(h.coords);
  const int dim = static_cast<int>(es.eigenvalues().size());
  const int cut = dim / 2;  // eigenvalues ascend; keep the top half
  Mat p = Mat::Zero(dim, dim);
  for (int i = cut; i < dim; ++i) {
    const auto q = es.eigenvectors().col(i);
    p += q * q.adjoint();
  }
  project_to_pattern(model, p, {level_n, level_n});
  return {hermitize(p), {level_n, level_n}};
}

Element draw_minorant(const SpaceModel& model, RngStream& rng, const Element& v) {
  if (model.is_lattice()) {
    Mat out = v.coords;
    for (int i = 0; i < out.rows(); ++i) out(i, 0) *= rng.uniform();
    return {out, {1, 1}};
  }
  const Element root = sqrt_psd(model, v);
  const Element c = draw_unit_interval(model, rng, v.level.n);
  Mat w = root.coords * c.coords * root.coords;
  project_to_pattern(model, w, v.level);
  return {hermitize(w), v.level};
}

Mat draw_unitary(const SpaceModel& model, RngStream& rng) {
  if (model.is_lattice())
    throw LatticeUnsupported("unitaries live on hermitian models");
  const int k = model.ambient_size();
  Mat u = Mat::Zero(k, k);
  int offset = 0;
  for (int b : model.blocks()) {
    Mat g(b, b);
    for (int r = 0; r < b; ++r)
      for (int c = 0; c < b; ++c) g(r, c) = rng.cgaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(b, b);
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < b; ++i) {
      const Cplx d = r(i, i);
      const double a = std::abs(d);
      q.col(i) *= (a > 0) ? d / a : Cplx(1, 0);
    }
    u.block(offset, offset, b, b) = q;
    offset += b;
  }
  return u;
}

namespace {
// Complementary support masks for the lattice model; both sides nonempty
// whenever d >= 2.
std::pair<RVec, RVec> lattice_masks(int d, RngStream& rng) {
  RVec mask = RVec::Zero(d);
  for (int i = 0; i < d; ++i) mask(i) = rng.uniform() < 0.5 ? 1.0 : 0.0;
  if (d >= 2) {
    if (mask.sum() == 0) mask(rng.uniform_int(0, d - 1)) = 1.0;
    if (mask.sum() == d) mask(rng.uniform_int(0, d - 1)) = 0.0;
  }
  return {mask, RVec::Ones(d) - mask};
}

Element compress(const SpaceModel& model, const Element& p, const Element& a) {
  Mat m = p.coords * a.coords * p.coords;
  project_to_pattern(model, m, a.level);
  return {0.5 * (m + m.adjoint()), a.level};
}
}  // namespace

std::pair<Element, Element> draw_orthogonal_pair(const SpaceModel& model,
                                                 RngStream& rng, int level_n) {
  if (model.is_lattice()) {
    auto [m1, m2] = lattice_masks(model.ambient_size(), rng);
    const Element a = draw_psd(model, rng);
    const Element b = draw_psd(model, rng);
    Mat u = a.coords.real().cwiseProduct(m1).cast<Cplx>();
    Mat v = b.coords.real().cwiseProduct(m2).cast<Cplx>();
    return {Element{u, {1, 1}}, Element{v, {1, 1}}};
  }
  const Element p = draw_projection(model, rng, level_n);
  const Element q = unit_element(model, level_n) - p;
  const Element u = compress(model, p, draw_psd(model, rng, level_n));
  const Element v = compress(model, q, draw_psd(model, rng, level_n));
  return {u, v};
}

OrthogonalTriple draw_orthogonal_triple(const SpaceModel& model, RngStream& rng,
                                        int level_n) {
  if (model.is_lattice()) {
    auto [m1, m2] = lattice_masks(model.ambient_size(), rng);
    const Element a = draw_psd(model, rng);
    const Element b = draw_psd(model, rng);
    const Element c = draw_psd(model, rng);
    OrthogonalTriple t;
    t.u = {Mat(a.coords.real().cwiseProduct(m1).cast<Cplx>()), {1, 1}};
    t.v = {Mat(b.coords.real().cwiseProduct(m2).cast<Cplx>()), {1, 1}};
    t.w = {Mat(c.coords.real().cwiseProduct(m2).cast<Cplx>()), {1, 1}};
    return t;
  }
  const Element p = draw_projection(model, rng, level_n);
  const Element q = unit_element(model, level_n) - p;
  OrthogonalTriple t;
  t.u = compress(model, p, draw_psd(model, rng, level_n));
  t.v = compress(model, q, draw_psd(model, rng, level_n));
  t.w = compress(model, q, draw_psd(model, rng, level_n));
  return t;
}

// --- coordinates ---------------------------------------------------------------

int ambient_coord_dim(const SpaceModel& model) {
  const int k = model.ambient_size();
  return model.is_lattice() ? k : 2 * k * k;
}

RVec ambient_coords(const SpaceModel& model, const Mat& block) {
  if (model.is_lattice()) {
    if (block.cols() != 1 || block.rows() != model.ambient_size())
      throw ShapeError("lattice coordinates need a d x 1 payload");
    return block.real();
  }
  const int k = model.ambient_size();
  if (block.rows() != k || block.cols() != k)
    throw ShapeError("ambient coordinates need a k x k payload");
  RVec out(2 * k * k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      out(2 * (r * k + c)) = block(r, c).real();
      out(2 * (r * k + c) + 1) = block(r, c).imag();
    }
  }
  return out;
}

Mat from_ambient_coords(const SpaceModel& model, const RVec& coords) {
  if (coords.size() != ambient_coord_dim(model))
    throw ShapeError("coordinate vector has wrong length");
  if (model.is_lattice()) return coords.cast<Cplx>();
  const int k = model.ambient_size();
  Mat out(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      out(r, c) = Cplx(coords(2 * (r * k + c)), coords(2 * (r * k + c) + 1));
  return out;
}

std::vector<Mat> hermitian_basis(const SpaceModel& model) {
  if (model.is_lattice())
    throw LatticeUnsupported("hermitian basis is defined on hermitian models");
  const int k = model.ambient_size();
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  std::vector<Mat> basis;
  basis.reserve(model.sa_dim());
  int offset = 0;
  for (int b : model.blocks()) {
    for (int i = 0; i < b; ++i) {
      Mat m = Mat::Zero(k, k);
      m(offset + i, offset + i) = Cplx(1, 0);
      basis.push_back(std::move(m));
    }
    for (int r = 0; r < b; ++r) {
      for (int c = r + 1; c < b; ++c) {
        Mat s = Mat::Zero(k, k);
        s(offset + r, offset + c) = Cplx(inv_sqrt2, 0);
        s(offset + c, offset + r) = Cplx(inv_sqrt2, 0);
        basis.push_back(std::move(s));
        Mat a = Mat::Zero(k, k);
        a(offset + r, offset + c) = Cplx(0, inv_sqrt2);
        a(offset + c, offset + r) = Cplx(0, -inv_sqrt2);
        basis.push_back(std::move(a));
      }
    }
    offset += b;
  }
  return basis;
}

RVec sa_coords(const SpaceModel& model, const Element& v) {
  validate_shape(model, v);
  if (!(v.level == Level{1, 1}))
    throw ShapeError("self-adjoint coordinates are a level-(1,1) notion");
  if (model.is_lattice()) return v.coords.real();
  const auto basis = hermitian_basis(model);
  RVec out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    out(static_cast<Eigen::Index>(i)) =
        (basis[i].adjoint() * v.coords).trace().real();
  return out;
}

Element from_sa_coords(const SpaceModel& model, const RVec& coords) {
  if (model.is_lattice()) {
    if (coords.size() != model.ambient_size())
      throw ShapeError("coordinate vector has wrong length");
    return {coords.cast<Cplx>(), {1, 1}};
  }
  const auto basis = hermitian_basis(model);
  if (coords.size() != static_cast<Eigen::Index>(basis.size()))
    throw ShapeError("coordinate vector has wrong length");
  Mat out = Mat::Zero(model.ambient_size(), model.ambient_size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    out += coords(static_cast<Eigen::Index>(i)) * basis[i];
  return {std::move(out), {1, 1}};
}

Element max_entangled_element(const SpaceModel& model, int level_n) {
  if (model.is_lattice())
    throw LatticeUnsupported("lattice model has no matricial levels");
  const int k = model.ambient_size();
  const int r = std::min(level_n, model.blocks().front());
  Mat payload = Mat::Zero(level_n * k, level_n * k);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) payload(a * k + a, b * k + b) = Cplx(1, 0);
  return {std::move(payload), {level_n, level_n}};
}

}  // namespace absorder
