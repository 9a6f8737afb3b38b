#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bqg/linalg.hpp"

namespace bqg {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FiniteGroup {
 public:
  FiniteGroup() = default;
  // Validates the table (Latin square, identity, associativity); throws GroupError.
  FiniteGroup(std::string name, std::vector<std::string> element_names, std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(names_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
  int inv(int a) const { return inverses_[a]; }
  int identity() const { return identity_; }
  const std::vector<int>& inverses() const { return inverses_; }
  const std::string& element_name(int a) const { return names_[a]; }
  const std::vector<std::string>& element_names() const { return names_; }
  std::optional<int> find(std::string_view name) const;

  bool is_abelian() const;
  int element_order(int a) const;
  std::vector<int> order_multiset() const;  // sorted element orders

  nlohmann::json to_json() const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::vector<int> inverses_;
  int identity_ = 0;
};

FiniteGroup load_group(const nlohmann::json& spec);
FiniteGroup load_group_file(const std::string& path);

// trivial, cyclic(n), dihedral(n), sym(n), direct_product(a,b); aliases sym3, cyclic4, z2xz3, ...
FiniteGroup preset(std::string_view name);

struct Subgroup {
  std::shared_ptr<const FiniteGroup> parent;
  std::vector<int> members;  // sorted parent indices

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int x) const;
  int local_index(int x) const;  // position in members, -1 if absent
  bool is_abelian() const;
  bool is_normal() const;
  std::string label() const;  // "<gen, gen>" with minimal generators
  FiniteGroup as_group() const;  // the subgroup's own multiplication table
};

Subgroup generated_subgroup(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& gens);
std::vector<Subgroup> subgroups(std::shared_ptr<const FiniteGroup> g);
std::vector<int> minimal_generators(const Subgroup& h);

struct ExactFactorization {
  std::shared_ptr<const FiniteGroup> G;
  Subgroup G1, G2;
};

// Throws GroupError naming the violated invariant.
void validate_factorization(const ExactFactorization& f);
std::vector<ExactFactorization> exact_factorizations(std::shared_ptr<const FiniteGroup> g, bool require_G1_abelian);

// Resolves "A3", "stab4", "factor1", "trivial", "whole", or a list of element names
// separated by ';' or whitespace.
Subgroup select_subgroup(std::shared_ptr<const FiniteGroup> g, std::string_view selector);

struct CharacterGroup {
  FiniteGroup base;
  ComplexMatrix table;  // table(k, h) = <h, g^_k>
  int conjugate(int k) const;  // index of the complex-conjugate character
};

CharacterGroup character_group(const FiniteGroup& h);
// Max deviation from the homomorphism property and from orthogonality.
double character_defect(const CharacterGroup& c);

}  // namespace bqg
