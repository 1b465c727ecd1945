#ifndef IPALG_SPACE_HPP
#define IPALG_SPACE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ipalg/rational.hpp"

namespace ipalg {

struct Variable {
    std::string name;
    std::vector<std::string> domain;  // value labels, nonempty
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Subset of a Space's variables, kept as sorted variable indices.
class Scope {
public:
    Scope() = default;
    explicit Scope(std::vector<size_t> indices);  // sorts, dedupes

    const std::vector<size_t>& indices() const { return indices_; }
    size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(size_t var_index) const;
    bool subset_of(const Scope& other) const;

    friend Scope scope_union(const Scope& a, const Scope& b);
    friend Scope scope_intersect(const Scope& a, const Scope& b);
    friend Scope scope_minus(const Scope& a, const Scope& b);
    bool operator==(const Scope& other) const { return indices_ == other.indices_; }
    bool operator!=(const Scope& other) const { return !(*this == other); }

private:
    std::vector<size_t> indices_;
};

Scope scope_union(const Scope& a, const Scope& b);
Scope scope_intersect(const Scope& a, const Scope& b);
Scope scope_minus(const Scope& a, const Scope& b);

// Finite multivariate possibility space: ordered variables with named
// finite domains. Cells of a scope are enumerated row-major with the
// first variable slowest; that order is the canonical serialization
// order everywhere.
class Space {
public:
    static SpacePtr make(std::vector<Variable> variables);

    size_t num_vars() const { return vars_.size(); }
    const Variable& var(size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const { return vars_; }

    bool has_var(const std::string& name) const;
    size_t var_index(const std::string& name) const;  // throws on unknown name

    Scope full_scope() const;
    Scope empty_scope() const { return Scope(); }
    Scope scope_of(const std::vector<std::string>& names) const;
    std::vector<std::string> scope_names(const Scope& scope) const;

    std::uint64_t cell_count(const Scope& scope) const;
    std::uint64_t full_cell_count() const { return cell_count(full_scope()); }

    bool operator==(const Space& other) const { return vars_eq(other); }
    bool operator!=(const Space& other) const { return !vars_eq(other); }

private:
    explicit Space(std::vector<Variable> variables);
    bool vars_eq(const Space& other) const;

    std::vector<Variable> vars_;
    std::map<std::string, size_t> by_name_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

// One value index per variable of a scope, in the space's variable order.
using Cell = std::vector<std::uint32_t>;

std::vector<Cell> enumerate_cells(const SpacePtr& space, const Scope& scope);
size_t cell_index(const SpacePtr& space, const Scope& scope, const Cell& cell);
Cell cell_at(const SpacePtr& space, const Scope& scope, size_t index);
Cell restrict_cell(const SpacePtr& space, const Scope& from, const Cell& cell,
                   const Scope& to);

// Exact-rational-valued function on the cells of Omega_scope.
struct Gamble {
    SpacePtr space;
    Scope scope;
    RatVec values;  // one per cell, row-major

    bool operator==(const Gamble& other) const;
};

Gamble make_gamble(SpacePtr space, Scope scope, RatVec values);
Gamble constant_gamble(SpacePtr space, const Scope& scope, const Rat& value);
Gamble zero_gamble(SpacePtr space, const Scope& scope);

Gamble gamble_add(const Gamble& a, const Gamble& b);
Gamble gamble_sub(const Gamble& a, const Gamble& b);
Gamble gamble_scale(const Rat& factor, const Gamble& g);
Gamble gamble_neg(const Gamble& g);
Rat min_value(const Gamble& g);
Rat max_value(const Gamble& g);

bool is_measurable(const Gamble& f, const Scope& s);
Gamble lift(const Gamble& f, const Scope& r);
Gamble project_measurable(const Gamble& f, const Scope& s);

// The product space of just the scope's variables (order preserved).
// Gambles move between a space and its subspace without data movement:
// cells of Omega_S enumerate identically in both.
SpacePtr subspace(const SpacePtr& space, const Scope& scope);
Gamble to_subspace(const Gamble& f, const SpacePtr& sub);
Gamble from_subspace(const Gamble& f, const SpacePtr& space);
Scope map_scope(const SpacePtr& from, const Scope& scope, const SpacePtr& to);

}  // namespace ipalg

#endif
