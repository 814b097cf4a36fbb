#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strataforge/orbits.hpp"

namespace strataforge {

using PQ = std::pair<long, long>;
using Bigraded = std::map<PQ, Subspace>;
using DimTable = std::map<PQ, std::size_t>;

// Decreasing filtration: F^a is everything for a <= lo and zero past the stored levels.
struct Filtration {
  std::size_t n = 0;
  long lo = 0;
  std::vector<Subspace> levels;  // F^{lo}, F^{lo+1}, ...
  Subspace at(long a) const;
  long hi() const { return lo + static_cast<long>(levels.size()) - 1; }
};

// Increasing filtration: W_k is zero below lo and everything past the stored levels.
struct WeightFiltration {
  std::size_t n = 0;
  long lo = 0;
  std::vector<Subspace> levels;  // W_{lo}, W_{lo+1}, ...
  Subspace at(long k) const;
  long hi() const { return lo + static_cast<long>(levels.size()) - 1; }
  std::size_t gr_dim(long k) const;
};

struct Sl2Triple {
  Vec n, y, n_plus;  // [Y,N] = -2N, [Y,N+] = 2N+, [N+,N] = Y
  bool y_in_cartan = false;
};

// All of these operate in one fixed set of coordinates for the algebra; frame
// coordinates work because a frame is a Lie automorphism of the Chevalley basis.
bool is_ad_nilpotent(const LieAlgebra& la, const Vec& n);
Sl2Triple jm_triple(const LieAlgebra& la, const Vec& n);
// ad(y) eigenspaces; throws ConsistencyError unless ad(y) is diagonalizable with integer spectrum.
std::map<long, Subspace> ad_eigenspaces(const LieAlgebra& la, const Vec& y);
WeightFiltration weight_filtration(const LieAlgebra& la, const Vec& n);
// Checks N W_l in W_{l-2} and N^k : Gr_k -> Gr_{-k} bijective by ranks; empty when fine.
std::optional<std::string> weight_filtration_failure(const LieAlgebra& la, const Vec& n, const WeightFiltration& w);

// Coordinate pieces g^{p,q} of a flag point, the Cartan at (0, 0).
Bigraded bigraded_pieces(const FlagPoint& fp, std::size_t n, std::size_t rank);
Filtration hodge_filtration(const Bigraded& g, std::size_t n);
// W_k = sum of pieces with p + q <= k.
WeightFiltration total_degree_filtration(const Bigraded& g, std::size_t n);
// Sum_p F^p cap sigma F^{k-p}, re-indexed as an increasing filtration W_{-k}.
WeightFiltration upside_down_filtration(const Filtration& f, const Mat& sigma);
DimTable dims(const Bigraded& g);
DimTable flip(const DimTable& d);

struct MixedFlagData {
  Filtration f;
  WeightFiltration w;
  Bigraded i;
  DimTable h;
  bool is_split = false;
};

// Deligne splitting of (F, W) with conjugation y -> sigma conj(y). Throws
// std::invalid_argument naming the first impure graded weight.
MixedFlagData deligne_bigrading(const Filtration& f, const WeightFiltration& w, const Mat& sigma);

struct NaiveLimit {
  Filtration f;  // F^a = sum of I^{p,q} with q <= -a
  Bigraded g;    // g^{p,q} = I^{-q,-p}
};
NaiveLimit naive_limit(const MixedFlagData& mfd);

struct SampleCheck {
  mpq_class y;
  bool pure = false, positive = false;
  std::string detail;
  bool pass() const { return pure && positive; }
};
struct OrbitConsistency {
  std::vector<SampleCheck> samples;
  bool all_pass() const;
};
// Whether exp(i y ad N) F is a polarized Hodge flag on the adjoint representation.
OrbitConsistency nilpotent_orbit_consistency(const LieAlgebra& la, const Mat& sigma, const Filtration& f, const Vec& n,
                                             const std::vector<mpq_class>& samples);
// Hodge flag test for one filtration: purity and the sign of (-1)^p (-B)(v, sigma v).
SampleCheck polarized_hodge_check(const LieAlgebra& la, const Mat& sigma, const Filtration& f);

// Exact test that a Hermitian matrix is positive definite (pivots of an LDL* sweep).
bool hermitian_positive_definite(const Mat& g);

// Conditions (i) and (ii) for N in g^{-1,-1}; empty when N polarizes the bigrading.
std::optional<std::string> polarization_failure(const LieAlgebra& la, const Mat& sigma, const Bigraded& g, const Vec& n);

// sigma-real basis of the span of the given root vectors of a frame (the set must be tau-stable).
std::vector<Vec> real_basis(const CartanFrame& f, const std::vector<std::size_t>& roots, std::size_t rank, std::size_t n);
// lambda X_alpha with lambda chosen so the vector is real; alpha must be a real root.
Vec real_root_vector(const CartanFrame& f, std::size_t alpha, std::size_t rank, std::size_t n);

enum class Polarizability { polarizable, not_polarizable, undetermined };
std::string to_string(Polarizability p);

struct PolarizabilityOptions {
  int height = 3;            // numerators and denominators of coefficients bounded by this
  std::size_t cap = 60000;   // candidates examined before giving up
};

struct PolarizabilityReport {
  Polarizability verdict = Polarizability::undetermined;
  std::optional<Vec> witness;  // frame coordinates of the record's representative
  std::string reason;
  std::size_t candidates = 0;
};

PolarizabilityReport polarizability(const OrbitSpace& space, std::size_t record, const PolarizabilityOptions& opts = {});
// Multiplicities of p + q are those of some sl2 representation; necessary for condition (i).
bool sl2_weight_shape(const DimTable& h);
// Every root has grading value in {-1, 0, 1}.
bool strongly_classical(const RealForm& rf);

struct CuspidalityReport {
  bool cuspidal = false;
  std::vector<std::size_t> levi_roots;
  std::string levi_type;
  std::size_t cayley_steps = 0;
  std::size_t split_rank = 0;  // dimension of the split part of the final Cartan
};
CuspidalityReport cuspidality(const OrbitSpace& space, std::size_t record);

struct DimensionReport {
  DimTable h, z, h_prim;
  long d = 0, c = 0;
  long dim_b = 0, dim_b_real = 0, dim_b_hat = 0, dim_d_n = 0, dim_orbit = 0;
  bool alpha = false, beta = false, gamma = false;
  bool orbit_formula_holds = false;  // dim O = 2d - c
};
// mfd must be split with weight filtration W(N) and N in I^{-1,-1}.
DimensionReport dimension_report(const LieAlgebra& la, const Vec& n, const MixedFlagData& mfd);

// Limiting data (F~, N) whose naive limit is the stratum's flag, built from a polarizing witness.
struct StratumLimit {
  Filtration f_tilde;
  Bigraded g_tilde;
  Vec n;
  Sl2Triple triple;  // for the witness N^
};
StratumLimit limit_from_stratum(const LieAlgebra& la, const Mat& sigma, const FlagPoint& fp, const Vec& witness);

// Weyl element whose flag point in the frame matches the given per-root (p, q); none if absent.
std::optional<std::size_t> locate_flag(const OrbitSpace& space, std::size_t frame, const std::vector<long>& p,
                                       const std::vector<long>& q);

// Text like "X[1,0] + (1/2 - z^2)*X[-1,-1]" for frame coordinates.
std::string describe_vector(const LieAlgebra& la, const Vec& v);

}  // namespace strataforge
