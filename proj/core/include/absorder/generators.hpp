#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absorder/maps.hpp"
#include "absorder/space.hpp"

namespace absorder {

// Orthogonal cone pair reproducible from the seed; the pair passes the
// product oracle exactly (to numerical precision).
std::pair<Element, Element> gen_orthogonal_pair(const SpaceModel& model,
                                                std::uint64_t seed,
                                                int level_n = 1);

// Map families with ground-truth classifications derivable from their
// construction. Every generated map reproduces bit-identically from its spec.
enum class MapFamily {
  unitary_conjugation,   // x -> u* x u
  transpose,             // x -> x^T
  permutation_lattice,   // coordinate permutation on lattice(d)
  direct_sum,            // psi_1 (+) psi_2 blockwise on M_k1 (+) M_k2
  jordan_mixture,        // x -> u* x u or u* x^T u
  positive_nonpreserver, // x -> (x + u* x u) / 2
  scaling,               // x -> t x
  corner_embedding       // x -> x (+) 0 into a larger algebra
};

std::string family_name(MapFamily f);

struct MapFamilySpec {
  MapFamily family = MapFamily::unitary_conjugation;
  int size = 2;                // hermitian block size k, or lattice dimension d
  int size2 = 2;               // second block (direct_sum) / padding (corner)
  double t = 2.0;              // scaling factor
  bool with_transpose = false; // jordan_mixture / direct_sum second summand
  bool on_lattice = false;     // scaling on the lattice model
  std::uint64_t seed = 0;

  std::string name() const;
};

enum class Expect { pass, fail, expected_pass, not_applicable };

// Expected classification, derivable from the family construction. The
// positivity expectation of sampled checks is only ever "expected_pass".
struct GroundTruth {
  Expect unital = Expect::not_applicable;
  Expect positive = Expect::not_applicable;
  Expect isometry = Expect::not_applicable;
  Expect order_isometry = Expect::not_applicable;
  Expect abs_preserving = Expect::not_applicable;
  Expect jordan = Expect::not_applicable;
  Expect multiplicative = Expect::not_applicable;
  bool bijective = false;
  // First level at which order-isometry / unital-|.|-preservation fail
  // (0 = no failure up to the default cap of 3; hermitian bijective only).
  int first_fail_level = 0;
  bool unit_image_is_order_projection = false;
};

struct GeneratedMap {
  StarLinearMap map;
  GroundTruth truth;
  MapFamilySpec spec;
};

GeneratedMap gen_map(const MapFamilySpec& spec);

// Compression (a (+) b) -> a from the two-block model onto its first block;
// the canonical noninjective |.|-preserving map for kernel/quotient checks.
StarLinearMap make_block_compression(int k1, int k2);

// Checks classifier outputs against the ground truth; returns one message per
// disagreement (empty when everything matches).
std::vector<std::string> compare_with_truth(const GeneratedMap& gen,
                                            const ToleranceConfig& cfg = {});

// A spanning matrix of family specs over the given model sizes.
std::vector<MapFamilySpec> default_map_matrix(
    const std::vector<int>& hermitian_sizes,
    const std::vector<int>& lattice_dims, int seeds_per_family);

}  // namespace absorder
