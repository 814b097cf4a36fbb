#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strataforge/real_form.hpp"

namespace strataforge {

// Extra generators for the real Weyl group of one frame, with optional expectations.
struct RealWeylFixture {
  std::size_t frame = 0;
  std::vector<std::string> generators;
  std::optional<std::size_t> expected_order;
  std::optional<std::size_t> expected_cosets;
};

struct OrbitOptions {
  std::vector<RealWeylFixture> fixtures;
  // Upper bound on candidate group elements examined per certified search.
  std::size_t search_cap = 200000;
};

struct RealWeylGroup {
  Subgroup group;
  Subgroup admissible;             // elements commuting with the conjugation and preserving root types
  std::vector<std::size_t> generators;
  std::vector<std::size_t> found;  // realized by an explicit group element
  bool complete = false;
  std::string reason;
};

// h^{p,q} and the roots placed at (p, q); the Cartan sits at (0, 0).
struct Bigrading {
  std::map<std::pair<long, long>, std::size_t> dims;
  std::map<std::pair<long, long>, std::vector<std::size_t>> roots;
  std::size_t dim(long p, long q) const;
  std::size_t total() const;
};

struct FlagPoint {
  std::size_t frame = 0, w = 0;
  std::vector<long> p, q;  // per root, in frame coordinates
  std::size_t cartan_dim = 0;

  Bigrading bigrading() const;
  long codimension() const;
  // Frame-coordinate basis indices of F^a.
  std::vector<std::size_t> filtration_indices(long a, std::size_t rank) const;
  // Indices with p(alpha) = a and q(alpha) = b, the Cartan included at (0, 0).
  std::vector<std::size_t> piece_indices(long a, long b, std::size_t rank) const;
};

enum class EdgeKind { cayley, cross, wolf_closed };
std::string to_string(EdgeKind k);

struct OrbitEdge {
  std::size_t from, to;
  EdgeKind kind;
  std::optional<std::size_t> root;  // root of the source frame
  bool certified = true;
};

struct OrbitRecord {
  std::string label;
  std::size_t frame = 0, rep = 0;
  std::vector<std::pair<std::size_t, std::size_t>> members;  // (frame, coset representative)
  long codim = 0;
  bool open = false, closed = false, hodge_tate = false, boundary = false;
  Bigrading hpq;
};

struct Codim1Candidate {
  std::size_t root;
  std::size_t stratum;      // orbit reached by the Cayley transform
  std::size_t across_wall;  // open orbit on the other side
};

class OrbitSpace {
 public:
  OrbitSpace(const RealForm& rf, const CartanHasse& hasse, const OrbitOptions& opts = {});

  const RealForm& real_form() const { return *rf_; }
  const CartanHasse& hasse() const { return *hasse_; }
  const std::vector<mpq_class>& base_cocharacter() const { return xi0_; }
  const Subgroup& stabilizer() const { return stab_; }
  const RealWeylGroup& real_weyl(std::size_t frame) const { return rw_[frame]; }
  const DoubleCosets& cosets(std::size_t frame) const { return dc_[frame]; }

  FlagPoint flag_point(std::size_t frame, std::size_t w) const;
  // Orbit containing the flag of (frame, w).
  std::size_t orbit_of(std::size_t frame, std::size_t w) const;

  const std::vector<OrbitRecord>& records() const { return records_; }
  const std::vector<OrbitEdge>& edges() const { return edges_; }
  std::size_t find_label(const std::string& label) const;
  std::size_t base_orbit() const { return orbit_of(0, 0); }
  bool complete_flag() const { return stab_.size() == 1; }
  bool real_weyl_complete() const;
  std::size_t uncertain_edges() const;

  // Flag F^* of (frame, w) as subspaces of the algebra in base coordinates.
  std::vector<Subspace> flag(std::size_t frame, std::size_t w) const;

  // Noncompact imaginary alpha with p(alpha) = 1 at an open orbit; complete flags only.
  std::vector<Codim1Candidate> codim1_candidates(std::size_t open_orbit) const;

  // Cayley target of (frame, w) in alpha: orbit index and whether it was certified.
  std::pair<std::size_t, bool> cayley_target(std::size_t frame, std::size_t w, std::size_t alpha) const;

 private:
  void compute_real_weyl(const OrbitOptions& opts);
  void enumerate();
  void merge_and_label();
  void build_edges();
  void classify();
  struct RawCayley {
    std::size_t target_frame = 0;
    std::vector<std::size_t> candidates;
    std::optional<std::size_t> realized;
  };
  const RawCayley& raw_cayley(std::size_t frame, std::size_t alpha) const;
  std::pair<std::size_t, bool> raw_cayley_target(std::size_t frame, std::size_t w, std::size_t alpha) const;
  std::vector<Mat> compact_lifts() const;
  std::vector<std::vector<long>> torus_exponents() const;

  const RealForm* rf_;
  const CartanHasse* hasse_;
  std::vector<mpq_class> xi0_;
  Subgroup stab_;
  std::vector<RealWeylGroup> rw_;
  std::vector<DoubleCosets> dc_;
  std::vector<Mat> lifts_;
  std::vector<std::vector<long>> torus_;
  std::size_t search_cap_ = 0;
  // Preliminary orbit (frame, coset) -> merged record.
  std::vector<std::vector<std::size_t>> record_of_;
  std::vector<OrbitRecord> records_;
  std::vector<OrbitEdge> edges_;
  mutable std::map<std::pair<std::size_t, std::size_t>, RawCayley> raw_cache_;
};

// Real Weyl group for a frame given extra generators, as used by OrbitSpace.
Subgroup admissible_elements(const RealForm& rf, const CartanFrame& f);

}  // namespace strataforge
