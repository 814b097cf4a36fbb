#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strataforge/root_system.hpp"

namespace strataforge {

struct WeylElement {
  std::vector<std::size_t> perm;  // root index -> root index
  IntMat on_roots;                // columns: images of simple roots
  IntMat on_coroots;              // columns: images of simple coroots
  std::vector<int> word;          // shortlex-minimal, 0-based simple reflections, w = s_word[0] s_word[1] ...

  std::size_t length() const { return word.size(); }
  // Word as 1-based digits, "e" for the identity.
  std::string word_string() const;
};

// Complete enumeration of the Weyl group with multiplication table.
class WeylGroup {
 public:
  explicit WeylGroup(const RootSystem& rs);

  const RootSystem& roots() const { return *rs_; }
  std::size_t size() const { return elems_.size(); }
  const WeylElement& operator[](std::size_t k) const { return elems_[k]; }
  // Index 0 is the identity; elements are in shortlex order of their words.
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * elems_.size() + b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t reflection(std::size_t root) const { return refl_[root]; }
  std::size_t longest() const;
  std::size_t find(const std::vector<std::size_t>& perm) const;
  // Element with a given action on coroot coordinates, if any.
  std::optional<std::size_t> find_by_coroot_matrix(const IntMat& m) const;
  // Parse "e", "w0", or a digit word such as "212".
  std::size_t parse_word(const std::string& w) const;

  std::vector<mpq_class> act_coweight(std::size_t w, const std::vector<mpq_class>& h) const;

 private:
  const RootSystem* rs_;
  std::vector<WeylElement> elems_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  std::vector<std::size_t> table_, inv_, refl_;
};

// Subgroup as a sorted list of element indices.
using Subgroup = std::vector<std::size_t>;

Subgroup generate_subgroup(const WeylGroup& w, const std::vector<std::size_t>& gens);
bool subgroup_contains(const Subgroup& g, std::size_t x);

// Partition of W into double cosets A w B; representative = shortlex-first element.
struct DoubleCosets {
  std::vector<std::size_t> reps;
  std::vector<std::size_t> coset_of;  // element -> position in reps
};
DoubleCosets double_cosets(const WeylGroup& w, const Subgroup& left, const Subgroup& right);

}  // namespace strataforge
