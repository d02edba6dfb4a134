#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absorder/errors.hpp"
#include "absorder/rng.hpp"
#include "absorder/tolerance.hpp"

namespace absorder {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Block shape (m, n) of an element of M_{m,n}(V). Level (1, 1) is the base
// space itself.
struct Level {
  int m = 1;
  int n = 1;
  bool operator==(const Level&) const = default;
  bool square() const { return m == n; }
};

// A concrete finite-dimensional model carrying cone, absolute value, order
// unit and norm:
//   - hermitian: self-adjoint part of M_{k1} (+) ... (+) M_{kr}, realized as
//     block-diagonal complex matrices inside M_k, k = k1 + ... + kr. The cone
//     is the positive semidefinite cone, |v| = (v* v)^{1/2}, e = identity.
//     The single-block case r = 1 is the plain hermitian(k) model.
//   - lattice: R^d with the coordinatewise order, |v| coordinatewise,
//     e = (1, ..., 1).
class SpaceModel {
 public:
  enum class Kind { hermitian, lattice };

  static SpaceModel hermitian(int k);
  static SpaceModel hermitian_blocks(std::vector<int> blocks);
  static SpaceModel lattice(int d);

  Kind kind() const { return kind_; }
  bool is_hermitian() const { return kind_ == Kind::hermitian; }
  bool is_lattice() const { return kind_ == Kind::lattice; }

  // Ambient matrix size k (hermitian) or the dimension d (lattice).
  int ambient_size() const { return size_; }
  const std::vector<int>& blocks() const { return blocks_; }
  bool single_block() const { return blocks_.size() <= 1; }

  // Real dimension of the self-adjoint part: sum k_i^2, or d.
  int sa_dim() const;

  // Eigenvalue clamping in (v* v)^{1/2}; on by default. Turning it off is a
  // fault-injection hook used by the verification tooling.
  bool clamp_spectrum() const { return clamp_spectrum_; }
  SpaceModel with_clamping(bool on) const {
    SpaceModel m = *this;
    m.clamp_spectrum_ = on;
    return m;
  }

  std::string descriptor() const;

  bool same_space(const SpaceModel& other) const {
    return kind_ == other.kind_ && blocks_ == other.blocks_ && size_ == other.size_;
  }

 private:
  Kind kind_ = Kind::hermitian;
  int size_ = 1;
  std::vector<int> blocks_;  // hermitian only
  bool clamp_spectrum_ = true;
};

// Element of M_{m,n}(V). The payload is an (m*k) x (n*k) complex matrix for
// the hermitian model, and a d x 1 real vector (stored complex) for the
// lattice model, which only supports level (1, 1).
struct Element {
  Mat coords;
  Level level;

  Element() = default;
  Element(Mat c, Level l) : coords(std::move(c)), level(l) {}
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(double s, const Element& a);

// --- model structure -------------------------------------------------------

// Order unit at level (n, n): e (+) ... (+) e.
Element unit_element(const SpaceModel& model, int level_n = 1);
Element zero_element(const SpaceModel& model, Level level = {1, 1});

// Throws ShapeError on payload / level mismatch or non-finite entries.
void validate_shape(const SpaceModel& model, const Element& v);

// Zeroes payload entries outside the block pattern of the model (identity for
// single-block hermitian and lattice payloads).
void project_to_pattern(const SpaceModel& model, Mat& payload, Level level);
bool pattern_respected(const SpaceModel& model, const Element& v, double tol);

bool is_self_adjoint(const SpaceModel& model, const Element& v,
                     const ToleranceConfig& cfg = {});
void require_self_adjoint(const SpaceModel& model, const Element& v,
                          const ToleranceConfig& cfg = {});

// Cone membership, scale-invariant acceptance: smallest eigenvalue down to
// -(eps_abs + eps_rel * ||v||).
bool in_cone(const SpaceModel& model, const Element& v,
             const ToleranceConfig& cfg = {});

// --- absolute value and norms ----------------------------------------------

// |v| = (v* v)^{1/2} for the hermitian model (any level (m, n); the result
// lives at level (n, n)); coordinatewise absolute value for the lattice.
Element abs_element(const SpaceModel& model, const Element& v);

// (v^+, v^-) = ((|v| + v)/2, (|v| - v)/2); requires self-adjoint v.
std::pair<Element, Element> pos_neg_parts(const SpaceModel& model,
                                          const Element& v,
                                          const ToleranceConfig& cfg = {});

// Order-unit norm inf{ t > 0 : t e +- v in cone }: largest |eigenvalue| on
// the hermitian model, largest |coordinate| on the lattice model.
double order_unit_norm(const SpaceModel& model, const Element& v,
                       const ToleranceConfig& cfg = {});

// l(v) = inf{ ||u|| : u >= 0, u + v >= 0 } = ||v^-||.
double lower_bound_functional(const SpaceModel& model, const Element& v,
                              const ToleranceConfig& cfg = {});

// Frobenius norm of the payload (used for residuals).
double frobenius(const Element& v);

// Positive square root of a positive semidefinite element (with the model's
// clamping policy). Self-adjoint square level required.
Element sqrt_psd(const SpaceModel& model, const Element& v);

// --- orthogonality ----------------------------------------------------------

// Residual || |u - v| - (u + v) ||_F. No cone validation.
double perp_residual(const SpaceModel& model, const Element& u,
                     const Element& v);

// u perp v :<=> |u - v| = u + v. Inputs must lie in the cone.
bool perp(const SpaceModel& model, const Element& u, const Element& v,
          const ToleranceConfig& cfg = {});

struct PerpInftyResult {
  bool verdict = false;          // the normalized-sum criterion decides
  bool grid_consistent = true;   // sampled (alpha, beta) cross-check
  double criterion_residual = 0; // | ||u/||u|| + v/||v|| || - 1 |
};

// u perp_infty v :<=> ||alpha u + beta v|| = max(||alpha u||, ||beta v||) for
// all real alpha, beta. Decided by the normalized-sum criterion
// || u/||u|| + v/||v|| || = 1; a deterministic (alpha, beta) grid including
// sign mixes cross-checks a positive verdict. Zero elements are orthogonal to
// everything.
PerpInftyResult perp_infty_detail(const SpaceModel& model, const Element& u,
                                  const Element& v,
                                  const ToleranceConfig& cfg = {});
bool perp_infty(const SpaceModel& model, const Element& u, const Element& v,
                const ToleranceConfig& cfg = {});

struct PerpInftyAbsResult {
  bool verdict = false;            // model oracle decides
  bool minorants_consistent = true;
  double oracle_residual = 0;      // ||u v||_F, or max_i min(u_i, v_i)
};

// u perp_infty^a v :<=> every pair of minorants 0 <= u1 <= u, 0 <= v1 <= v is
// infty-orthogonal. Decided by the model oracle (u v = 0 on the hermitian
// model, coordinatewise min = 0 on the lattice model); randomized minorants
// u1 = u^{1/2} c u^{1/2} with 0 <= c <= e serve as a consistency check.
PerpInftyAbsResult perp_infty_abs_detail(const SpaceModel& model,
                                         const Element& u, const Element& v,
                                         const ToleranceConfig& cfg = {});
bool perp_infty_abs(const SpaceModel& model, const Element& u,
                    const Element& v, const ToleranceConfig& cfg = {});

// --- seeded draws ------------------------------------------------------------

// Pattern-respecting complex Gaussian payload of level shape.
Mat draw_ginibre(const SpaceModel& model, RngStream& rng, Level level);

// Random self-adjoint element: symmetrized Gaussian.
Element draw_self_adjoint(const SpaceModel& model, RngStream& rng,
                          int level_n = 1);

// Random cone element g g* (full rank a.s.).
Element draw_psd(const SpaceModel& model, RngStream& rng, int level_n = 1);

// Rank-one cone element xi xi* supported in a single block.
Element draw_rank_one_psd(const SpaceModel& model, RngStream& rng,
                          int level_n = 1);

// Random element of the order interval [0, e].
Element draw_unit_interval(const SpaceModel& model, RngStream& rng,
                           int level_n = 1);

// Random projection: spectral cut of a random self-adjoint element at its
// median eigenvalue (random 0/1 mask on the lattice model).
Element draw_projection(const SpaceModel& model, RngStream& rng,
                        int level_n = 1);

// Random minorant of v in [0, v]: v^{1/2} c v^{1/2} with c drawn in [0, e].
Element draw_minorant(const SpaceModel& model, RngStream& rng,
                      const Element& v);

// Random block-diagonal unitary: per-block QR of a complex Gaussian with the
// R-diagonal phases fixed. Hermitian models only.
Mat draw_unitary(const SpaceModel& model, RngStream& rng);

// Orthogonal cone pair: u = p a p, v = (e-p) b (e-p) for a random projection
// p and random cone elements a, b (disjoint coordinate masks on the lattice).
std::pair<Element, Element> draw_orthogonal_pair(const SpaceModel& model,
                                                 RngStream& rng,
                                                 int level_n = 1);

// Triple with u perp v and u perp w (v, w share the complementary support).
struct OrthogonalTriple {
  Element u, v, w;
};
OrthogonalTriple draw_orthogonal_triple(const SpaceModel& model, RngStream& rng,
                                        int level_n = 1);

// --- coordinates --------------------------------------------------------------

// Real coordinatization of the ambient space at level (1, 1): row-major
// [re, im] pairs for hermitian models (length 2k^2), plain coordinates for
// lattice models (length d). This is the layout used by the on-disk formats.
RVec ambient_coords(const SpaceModel& model, const Mat& block);
Mat from_ambient_coords(const SpaceModel& model, const RVec& coords);
int ambient_coord_dim(const SpaceModel& model);

// Trace-orthonormal basis of the self-adjoint part (hermitian models):
// within each block, the diagonal matrix units, then (E_rc + E_cr)/sqrt(2)
// and i(E_rc - E_cr)/sqrt(2) for r < c. Lattice models are not covered here;
// their self-adjoint part is the whole space with the standard basis.
std::vector<Mat> hermitian_basis(const SpaceModel& model);

// Coordinates of a level-(1,1) element in the self-adjoint basis (hermitian)
// or the standard basis (lattice).
RVec sa_coords(const SpaceModel& model, const Element& v);
Element from_sa_coords(const SpaceModel& model, const RVec& coords);

// The unnormalized maximally entangled element of M_n(V): sum of matrix-unit
// blocks E_ij (x) e_ij over i, j < min(n, first block size). Rank one and
// positive; its entrywise transpose has a -1 eigenvalue, which makes it the
// canonical probe for level >= 2 failures.
Element max_entangled_element(const SpaceModel& model, int level_n);

}  // namespace absorder
