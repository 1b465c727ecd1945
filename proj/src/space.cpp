#include "ipalg/space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ipalg/errors.hpp"
#include "ipalg/guards.hpp"

namespace ipalg {

Scope::Scope(std::vector<size_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool Scope::contains(size_t var_index) const {
    return std::binary_search(indices_.begin(), indices_.end(), var_index);
}

bool Scope::subset_of(const Scope& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(),
                         indices_.begin(), indices_.end());
}

Scope scope_union(const Scope& a, const Scope& b) {
    std::vector<size_t> out;
    std::set_union(a.indices_.begin(), a.indices_.end(), b.indices_.begin(),
                   b.indices_.end(), std::back_inserter(out));
    return Scope(std::move(out));
}

Scope scope_intersect(const Scope& a, const Scope& b) {
    std::vector<size_t> out;
    std::set_intersection(a.indices_.begin(), a.indices_.end(), b.indices_.begin(),
                          b.indices_.end(), std::back_inserter(out));
    return Scope(std::move(out));
}

Scope scope_minus(const Scope& a, const Scope& b) {
    std::vector<size_t> out;
    std::set_difference(a.indices_.begin(), a.indices_.end(), b.indices_.begin(),
                        b.indices_.end(), std::back_inserter(out));
    return Scope(std::move(out));
}

Space::Space(std::vector<Variable> variables) : vars_(std::move(variables)) {
    std::set<std::string> seen;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name.empty())
            throw std::invalid_argument("variable name must be nonempty");
        if (!seen.insert(vars_[i].name).second)
            throw std::invalid_argument("duplicate variable name '" + vars_[i].name + "'");
        if (vars_[i].domain.empty())
            throw std::invalid_argument("empty domain for variable '" + vars_[i].name + "'");
        by_name_[vars_[i].name] = i;
    }
}

SpacePtr Space::make(std::vector<Variable> variables) {
    SpacePtr space(new Space(std::move(variables)));
    std::uint64_t cells = 1;
    for (const Variable& v : space->vars_) {
        cells *= v.domain.size();
        if (cells > guards().max_cells)
            throw guard_error("max-cells", "full space exceeds the cell guard");
    }
    return space;
}

bool Space::has_var(const std::string& name) const { return by_name_.count(name) > 0; }

size_t Space::var_index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        throw std::invalid_argument("unknown variable '" + name + "'");
    return it->second;
}

Scope Space::full_scope() const {
    std::vector<size_t> all(vars_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Scope(std::move(all));
}

Scope Space::scope_of(const std::vector<std::string>& names) const {
    std::vector<size_t> idx;
    idx.reserve(names.size());
    for (const std::string& n : names) idx.push_back(var_index(n));
    return Scope(std::move(idx));
}

std::vector<std::string> Space::scope_names(const Scope& scope) const {
    std::vector<std::string> names;
    names.reserve(scope.size());
    for (size_t i : scope.indices()) names.push_back(vars_.at(i).name);
    return names;
}

std::uint64_t Space::cell_count(const Scope& scope) const {
    std::uint64_t n = 1;
    for (size_t i : scope.indices()) n *= vars_.at(i).domain.size();
    return n;
}

bool Space::vars_eq(const Space& other) const {
    if (vars_.size() != other.vars_.size()) return false;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name != other.vars_[i].name) return false;
        if (vars_[i].domain != other.vars_[i].domain) return false;
    }
    return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {

void check_scope(const SpacePtr& space, const Scope& scope) {
    if (!scope.empty() && scope.indices().back() >= space->num_vars())
        throw std::invalid_argument("scope index out of range for space");
}

}  // namespace

std::vector<Cell> enumerate_cells(const SpacePtr& space, const Scope& scope) {
    check_scope(space, scope);
    size_t total = static_cast<size_t>(space->cell_count(scope));
    std::vector<Cell> cells;
    cells.reserve(total);
    for (size_t idx = 0; idx < total; ++idx) cells.push_back(cell_at(space, scope, idx));
    return cells;
}

size_t cell_index(const SpacePtr& space, const Scope& scope, const Cell& cell) {
    if (cell.size() != scope.size())
        throw std::invalid_argument("cell arity does not match scope");
    size_t index = 0;
    for (size_t k = 0; k < scope.size(); ++k) {
        size_t dom = space->var(scope.indices()[k]).domain.size();
        if (cell[k] >= dom) throw std::invalid_argument("cell value index out of range");
        index = index * dom + cell[k];
    }
    return index;
}

Cell cell_at(const SpacePtr& space, const Scope& scope, size_t index) {
    Cell cell(scope.size(), 0);
    for (size_t k = scope.size(); k-- > 0;) {
        size_t dom = space->var(scope.indices()[k]).domain.size();
        cell[k] = static_cast<std::uint32_t>(index % dom);
        index /= dom;
    }
    return cell;
}

Cell restrict_cell(const SpacePtr& space, const Scope& from, const Cell& cell,
                   const Scope& to) {
    (void)space;
    if (!to.subset_of(from))
        throw std::invalid_argument("restriction target is not a subscope");
    Cell out;
    out.reserve(to.size());
    size_t j = 0;
    for (size_t k = 0; k < from.size(); ++k) {
        if (j < to.size() && from.indices()[k] == to.indices()[j]) {
            out.push_back(cell[k]);
            ++j;
        }
    }
    return out;
}

bool Gamble::operator==(const Gamble& other) const {
    return same_space(space, other.space) && scope == other.scope && values == other.values;
}

Gamble make_gamble(SpacePtr space, Scope scope, RatVec values) {
    check_scope(space, scope);
    if (values.size() != space->cell_count(scope))
        throw std::invalid_argument("gamble value count does not match cell count");
    return Gamble{std::move(space), std::move(scope), std::move(values)};
}

Gamble constant_gamble(SpacePtr space, const Scope& scope, const Rat& value) {
    RatVec vals(static_cast<size_t>(space->cell_count(scope)), value);
    return make_gamble(std::move(space), scope, std::move(vals));
}

Gamble zero_gamble(SpacePtr space, const Scope& scope) {
    return constant_gamble(std::move(space), scope, Rat(0));
}

namespace {

void check_same_shape(const Gamble& a, const Gamble& b) {
    if (!same_space(a.space, b.space) || a.scope != b.scope)
        throw std::invalid_argument("gamble shape mismatch");
}

}  // namespace

Gamble gamble_add(const Gamble& a, const Gamble& b) {
    check_same_shape(a, b);
    Gamble out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

Gamble gamble_sub(const Gamble& a, const Gamble& b) {
    check_same_shape(a, b);
    Gamble out = a;
    for (size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

Gamble gamble_scale(const Rat& factor, const Gamble& g) {
    Gamble out = g;
    for (Rat& v : out.values) v *= factor;
    return out;
}

Gamble gamble_neg(const Gamble& g) { return gamble_scale(Rat(-1), g); }

Rat min_value(const Gamble& g) {
    Rat m = g.values.at(0);
    for (const Rat& v : g.values)
        if (v < m) m = v;
    return m;
}

Rat max_value(const Gamble& g) {
    Rat m = g.values.at(0);
    for (const Rat& v : g.values)
        if (v > m) m = v;
    return m;
}

bool is_measurable(const Gamble& f, const Scope& s) {
    if (!s.subset_of(f.scope))
        throw std::invalid_argument("measurability scope is not a subset of the gamble scope");
    size_t total = f.values.size();
    // Compare every cell against the first cell of its block (the cell
    // with equal s-coordinates and zeroed others).
    std::vector<size_t> rep(total);
    for (size_t idx = 0; idx < total; ++idx) {
        Cell cell = cell_at(f.space, f.scope, idx);
        Cell zeroed = cell;
        size_t j = 0;
        for (size_t k = 0; k < f.scope.size(); ++k) {
            bool in_s = j < s.size() && f.scope.indices()[k] == s.indices()[j];
            if (in_s)
                ++j;
            else
                zeroed[k] = 0;
        }
        rep[idx] = cell_index(f.space, f.scope, zeroed);
    }
    for (size_t idx = 0; idx < total; ++idx)
        if (f.values[idx] != f.values[rep[idx]]) return false;
    return true;
}

Gamble lift(const Gamble& f, const Scope& r) {
    if (!f.scope.subset_of(r))
        throw std::invalid_argument("lift target is not a superset of the gamble scope");
    if (r == f.scope) return f;
    size_t total = static_cast<size_t>(f.space->cell_count(r));
    RatVec values;
    values.reserve(total);
    for (size_t idx = 0; idx < total; ++idx) {
        Cell cell = cell_at(f.space, r, idx);
        Cell down = restrict_cell(f.space, r, cell, f.scope);
        values.push_back(f.values[cell_index(f.space, f.scope, down)]);
    }
    return make_gamble(f.space, r, std::move(values));
}

Gamble project_measurable(const Gamble& f, const Scope& s) {
    if (!is_measurable(f, s))
        throw std::invalid_argument("gamble is not measurable on the requested scope");
    if (s == f.scope) return f;
    size_t total = static_cast<size_t>(f.space->cell_count(s));
    RatVec values;
    values.reserve(total);
    for (size_t idx = 0; idx < total; ++idx) {
        Cell cell = cell_at(f.space, s, idx);
        // Extend with zeros; any extension gives the same value.
        Cell up(f.scope.size(), 0);
        size_t j = 0;
        for (size_t k = 0; k < f.scope.size(); ++k) {
            if (j < s.size() && f.scope.indices()[k] == s.indices()[j]) {
                up[k] = cell[j];
                ++j;
            }
        }
        values.push_back(f.values[cell_index(f.space, f.scope, up)]);
    }
    return make_gamble(f.space, s, std::move(values));
}

SpacePtr subspace(const SpacePtr& space, const Scope& scope) {
    check_scope(space, scope);
    std::vector<Variable> vars;
    vars.reserve(scope.size());
    for (size_t i : scope.indices()) vars.push_back(space->var(i));
    return Space::make(std::move(vars));
}

Gamble to_subspace(const Gamble& f, const SpacePtr& sub) {
    // Cells of Omega_scope enumerate identically in the parent space and
    // in the subspace built from the same variables, so values carry over.
    if (f.scope.size() != sub->num_vars())
        throw std::invalid_argument("subspace arity mismatch");
    for (size_t k = 0; k < f.scope.size(); ++k) {
        const Variable& a = f.space->var(f.scope.indices()[k]);
        const Variable& b = sub->var(k);
        if (a.name != b.name || a.domain != b.domain)
            throw std::invalid_argument("subspace variable mismatch");
    }
    return make_gamble(sub, sub->full_scope(), f.values);
}

Gamble from_subspace(const Gamble& f, const SpacePtr& space) {
    if (f.scope != f.space->full_scope())
        throw std::invalid_argument("from_subspace expects a full-scope gamble");
    Scope scope = space->scope_of(f.space->scope_names(f.scope));
    std::vector<std::string> ordered = space->scope_names(scope);
    if (ordered != f.space->scope_names(f.scope))
        throw std::invalid_argument("subspace variable order mismatch");
    return make_gamble(space, scope, f.values);
}

Scope map_scope(const SpacePtr& from, const Scope& scope, const SpacePtr& to) {
    return to->scope_of(from->scope_names(scope));
}

}  // namespace ipalg
