#include "bqg/groups.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace bqg {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> element_names, std::vector<std::vector<int>> table)
    : name_(std::move(name)), names_(std::move(element_names)) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw GroupError("group has no elements");
  if (static_cast<int>(table.size()) != n) throw GroupError(fmt::format("table has {} rows, expected {}", table.size(), n));
  table_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw GroupError(fmt::format("table row {} has {} entries, expected {}", i, table[i].size(), n));
    for (int j = 0; j < n; ++j) {
      const int v = table[i][j];
      if (v < 0 || v >= n) throw GroupError(fmt::format("table[{}][{}] = {} is out of range", i, j, v));
      table_[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (static_cast<int>(seen.size()) != n) throw GroupError("element names are not distinct");
  }

  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw GroupError("no identity element");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = mul(a, b);
      for (int c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c)))
          throw GroupError(fmt::format("associativity fails for triple ({}, {}, {}): ({}{}){} = {} but {}({}{}) = {}", a, b, c,
                                       names_[a], names_[b], names_[c], names_[mul(ab, c)], names_[a], names_[b],
                                       names_[c], names_[mul(a, mul(b, c))]));
    }

  for (int i = 0; i < n; ++i) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row[mul(i, j)]++) throw GroupError(fmt::format("row {} repeats element {} (not a Latin square)", i, mul(i, j)));
      if (col[mul(j, i)]++) throw GroupError(fmt::format("column {} repeats element {} (not a Latin square)", i, mul(j, i)));
    }
  }

  inverses_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_) inverses_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inverses_[a] < 0 || mul(inverses_[a], a) != identity_)
      throw GroupError(fmt::format("element {} has no two-sided inverse", a));
}

std::optional<int> FiniteGroup::find(std::string_view name) const {
  for (int i = 0; i < order(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::order_multiset() const {
  std::vector<int> out(order());
  for (int a = 0; a < order(); ++a) out[a] = element_order(a);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json FiniteGroup::to_json() const {
  std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
  for (int i = 0; i < order(); ++i)
    for (int j = 0; j < order(); ++j) t[i][j] = mul(i, j);
  return {{"name", name_}, {"order", order()}, {"elements", names_}, {"table", t}};
}

FiniteGroup load_group(const nlohmann::json& spec) {
  try {
    const auto names = spec.at("elements").get<std::vector<std::string>>();
    const auto table = spec.at("table").get<std::vector<std::vector<int>>>();
    if (spec.contains("order") && spec.at("order").get<int>() != static_cast<int>(names.size()))
      throw GroupError(fmt::format("order {} does not match {} listed elements", spec.at("order").get<int>(), names.size()));
    return FiniteGroup(spec.value("name", std::string("group")), names, table);
  } catch (const nlohmann::json::exception& e) {
    throw GroupError(std::string("malformed group JSON: ") + e.what());
  }
}

FiniteGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw GroupError(std::string("malformed group JSON: ") + e.what());
  }
  return load_group(j);
}

// ---------------------------------------------------------------------------
// presets

namespace {

FiniteGroup make_cyclic(int n) {
  if (n < 1) throw GroupError("cyclic(n) needs n >= 1");
  std::vector<std::string> names(n);
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names[i] = std::to_string(i);
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return FiniteGroup(fmt::format("cyclic({})", n), names, t);
}

FiniteGroup make_dihedral(int n) {
  if (n < 1) throw GroupError("dihedral(n) needs n >= 1");
  // r^k s^f stored at index f*n + k
  const int m = 2 * n;
  std::vector<std::string> names(m);
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int f = 0; f < 2; ++f)
    for (int k = 0; k < n; ++k) {
      std::string r = k == 0 ? "" : (k == 1 ? "r" : "r" + std::to_string(k));
      std::string nm = r + (f ? "s" : "");
      names[f * n + k] = nm.empty() ? "e" : nm;
    }
  for (int f1 = 0; f1 < 2; ++f1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int k2 = 0; k2 < n; ++k2) {
          const int k = ((k1 + (f1 ? -k2 : k2)) % n + n) % n;
          t[f1 * n + k1][f2 * n + k2] = (f1 ^ f2) * n + k;
        }
  return FiniteGroup(fmt::format("dihedral({})", n), names, t);
}

std::string cycle_notation(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<char> seen(n, 0);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FiniteGroup make_sym(int n) {
  if (n < 1 || n > 6) throw GroupError("sym(n) is provided for 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> idx;
  for (std::size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = static_cast<int>(i);
  const int m = static_cast<int>(perms.size());
  std::vector<std::string> names(m);
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<int> c(n);
  for (int a = 0; a < m; ++a) {
    names[a] = cycle_notation(perms[a]);
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];  // (ab)(x) = a(b(x))
      t[a][b] = idx[c];
    }
  }
  return FiniteGroup(fmt::format("sym({})", n), names, t);
}

FiniteGroup make_direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order(), m = na * nb;
  // keep the identity first
  std::vector<int> ia(na), ib(nb);
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::stable_partition(ia.begin(), ia.end(), [&](int x) { return x == a.identity(); });
  std::stable_partition(ib.begin(), ib.end(), [&](int x) { return x == b.identity(); });
  std::vector<int> pa(na), pb(nb);
  for (int i = 0; i < na; ++i) pa[ia[i]] = i;
  for (int i = 0; i < nb; ++i) pb[ib[i]] = i;

  std::vector<std::string> names(m);
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      names[i * nb + j] = "(" + a.element_name(ia[i]) + "," + b.element_name(ib[j]) + ")";
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) t[i * nb + j][k * nb + l] = pa[a.mul(ia[i], ia[k])] * nb + pb[b.mul(ib[j], ib[l])];
    }
  return FiniteGroup(fmt::format("direct_product({},{})", a.name(), b.name()), names, t);
}

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int parse_int(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw GroupError("unknown preset: " + whole);
  return std::stoi(s);
}

FiniteGroup preset_impl(const std::string& s) {
  if (s == "trivial") return make_cyclic(1);
  const auto open = s.find('(');
  if (open != std::string::npos) {
    if (s.back() != ')') throw GroupError("unknown preset: " + s);
    const std::string head = s.substr(0, open);
    const std::string arg = s.substr(open + 1, s.size() - open - 2);
    if (head == "cyclic") return make_cyclic(parse_int(arg, s));
    if (head == "dihedral") return make_dihedral(parse_int(arg, s));
    if (head == "sym") return make_sym(parse_int(arg, s));
    if (head == "direct_product") {
      int depth = 0;
      for (std::size_t i = 0; i < arg.size(); ++i) {
        if (arg[i] == '(') ++depth;
        if (arg[i] == ')') --depth;
        if (arg[i] == ',' && depth == 0) return make_direct_product(preset_impl(arg.substr(0, i)), preset_impl(arg.substr(i + 1)));
      }
    }
    throw GroupError("unknown preset: " + s);
  }
  // aliases: sym3, cyclic4, dihedral4, z6, z2xz3
  if (s.find('x') != std::string::npos && s.front() == 'z') {
    const auto x = s.find('x');
    return make_direct_product(preset_impl(s.substr(0, x)), preset_impl(s.substr(x + 1)));
  }
  for (const char* head : {"cyclic", "dihedral", "sym", "z"}) {
    const std::string h(head);
    if (s.rfind(h, 0) == 0 && s.size() > h.size()) {
      const int n = parse_int(s.substr(h.size()), s);
      if (h == "cyclic" || h == "z") return make_cyclic(n);
      if (h == "dihedral") return make_dihedral(n);
      return make_sym(n);
    }
  }
  throw GroupError("unknown preset: " + s);
}

// Cycles of a sym(n) element name, e.g. "(12)(34)" -> {{1,2},{3,4}}.
std::optional<std::vector<std::vector<int>>> parse_cycles(const std::string& name) {
  std::vector<std::vector<int>> cycles;
  if (name == "()") return cycles;
  std::size_t i = 0;
  while (i < name.size()) {
    if (name[i] != '(') return std::nullopt;
    std::vector<int> cyc;
    ++i;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) cyc.push_back(name[i++] - '0');
    if (i >= name.size() || name[i] != ')') return std::nullopt;
    ++i;
    cycles.push_back(cyc);
  }
  return cycles;
}

// Splits "(x,y)" at its top-level comma.
std::optional<std::pair<std::string, std::string>> parse_pair(const std::string& name) {
  if (name.size() < 5 || name.front() != '(' || name.back() != ')') return std::nullopt;
  const std::string in = name.substr(1, name.size() - 2);
  int depth = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '(') ++depth;
    if (in[i] == ')') --depth;
    if (in[i] == ',' && depth == 0) return std::make_pair(in.substr(0, i), in.substr(i + 1));
  }
  return std::nullopt;
}

}  // namespace

FiniteGroup preset(std::string_view name) { return preset_impl(normalize(name)); }

// ---------------------------------------------------------------------------
// subgroups

bool Subgroup::contains(int x) const { return std::binary_search(members.begin(), members.end(), x); }

int Subgroup::local_index(int x) const {
  auto it = std::lower_bound(members.begin(), members.end(), x);
  return (it != members.end() && *it == x) ? static_cast<int>(it - members.begin()) : -1;
}

bool Subgroup::is_abelian() const {
  for (int a : members)
    for (int b : members)
      if (parent->mul(a, b) != parent->mul(b, a)) return false;
  return true;
}

bool Subgroup::is_normal() const {
  for (int g = 0; g < parent->order(); ++g)
    for (int h : members)
      if (!contains(parent->mul(parent->mul(g, h), parent->inv(g)))) return false;
  return true;
}

std::string Subgroup::label() const {
  const auto gens = minimal_generators(*this);
  if (gens.empty()) return "<>";
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + parent->element_name(gens[i]);
  return out + ">";
}

FiniteGroup Subgroup::as_group() const {
  const int n = order();
  std::vector<std::string> names(n);
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names[i] = parent->element_name(members[i]);
    for (int j = 0; j < n; ++j) t[i][j] = local_index(parent->mul(members[i], members[j]));
  }
  return FiniteGroup(parent->name() + label(), names, t);
}

Subgroup generated_subgroup(std::shared_ptr<const FiniteGroup> g, const std::vector<int>& gens) {
  std::vector<char> in(g->order(), 0);
  std::vector<int> members{g->identity()};
  in[g->identity()] = 1;
  for (std::size_t k = 0; k < members.size(); ++k)
    for (int s : gens) {
      const int y = g->mul(members[k], s);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(g), std::move(members)};
}

std::vector<Subgroup> subgroups(std::shared_ptr<const FiniteGroup> g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier;
  auto add = [&](std::vector<int> m, std::vector<std::vector<int>>& into) {
    if (found.insert(m).second) into.push_back(std::move(m));
  };
  add(generated_subgroup(g, {}).members, frontier);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier) {
      Subgroup sub{g, h};
      for (int x = 0; x < g->order(); ++x) {
        if (sub.contains(x)) continue;
        std::vector<int> gens = h;
        gens.push_back(x);
        add(generated_subgroup(g, gens).members, next);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (const auto& m : found) out.push_back(Subgroup{g, m});
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.members < b.members;
  });
  return out;
}

std::vector<int> minimal_generators(const Subgroup& h) {
  if (h.order() == 1) return {};
  const auto& m = h.members;
  const int n = h.order();
  // exhaustive search by size; subgroups here need at most three generators
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> pick(k);
    std::function<bool(int, int)> rec = [&](int pos, int start) {
      if (pos == k) {
        std::vector<int> gens(k);
        for (int i = 0; i < k; ++i) gens[i] = m[pick[i]];
        return generated_subgroup(h.parent, gens).order() == n;
      }
      for (int i = start; i < n; ++i) {
        if (m[i] == h.parent->identity()) continue;
        pick[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) {
      std::vector<int> gens(k);
      for (int i = 0; i < k; ++i) gens[i] = m[pick[i]];
      return gens;
    }
  }
  return m;
}

void validate_factorization(const ExactFactorization& f) {
  const FiniteGroup& g = *f.G;
  if (f.G1.parent.get() != f.G.get() || f.G2.parent.get() != f.G.get())
    throw GroupError("factorization subgroups belong to a different group");
  if (static_cast<long>(f.G1.order()) * f.G2.order() != g.order())
    throw GroupError(fmt::format("|G1|*|G2| = {}*{} differs from |G| = {}", f.G1.order(), f.G2.order(), g.order()));
  for (int x : f.G1.members)
    if (x != g.identity() && f.G2.contains(x))
      throw GroupError("G1 and G2 intersect in " + g.element_name(x));
  std::vector<char> hit(g.order(), 0);
  for (int a : f.G1.members)
    for (int b : f.G2.members) {
      const int x = g.mul(a, g.inv(b));
      if (hit[x]++)
        throw GroupError(fmt::format("g*h^-1 is not injective: {} is hit twice", g.element_name(x)));
    }
}

std::vector<ExactFactorization> exact_factorizations(std::shared_ptr<const FiniteGroup> g, bool require_G1_abelian) {
  const auto subs = subgroups(g);
  std::vector<ExactFactorization> out;
  for (const auto& a : subs) {
    if (require_G1_abelian && !a.is_abelian()) continue;
    for (const auto& b : subs) {
      if (static_cast<long>(a.order()) * b.order() != g->order()) continue;
      bool meet = false;
      for (int x : a.members) meet = meet || (x != g->identity() && b.contains(x));
      if (meet) continue;
      ExactFactorization f{g, a, b};
      validate_factorization(f);
      out.push_back(std::move(f));
    }
  }
  return out;
}

Subgroup select_subgroup(std::shared_ptr<const FiniteGroup> g, std::string_view selector) {
  std::string sel(selector);
  while (!sel.empty() && std::isspace(static_cast<unsigned char>(sel.back()))) sel.pop_back();
  while (!sel.empty() && std::isspace(static_cast<unsigned char>(sel.front()))) sel.erase(sel.begin());
  if (sel.empty()) throw GroupError("empty subgroup selector");

  if (sel == "trivial" || sel == "e" || sel == "1") return generated_subgroup(g, {});
  if (sel == "whole" || sel == "G") {
    std::vector<int> all(g->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup{g, all};
  }

  const bool is_sym = g->name().rfind("sym(", 0) == 0;
  if (is_sym && sel.size() >= 2 && (sel[0] == 'A' || sel.rfind("stab", 0) == 0)) {
    const bool alt = sel[0] == 'A';
    const int k = parse_int(sel.substr(alt ? 1 : 4), sel);
    const int n = std::stoi(g->name().substr(4));
    if (alt && k != n) throw GroupError(fmt::format("selector {} does not match {}", sel, g->name()));
    if (!alt && (k < 1 || k > n)) throw GroupError(fmt::format("selector {} is out of range for {}", sel, g->name()));
    std::vector<int> members;
    for (int x = 0; x < g->order(); ++x) {
      const auto cycles = parse_cycles(g->element_name(x));
      if (!cycles) throw GroupError("cannot parse permutation name " + g->element_name(x));
      if (alt) {
        int parity = 0;
        for (const auto& c : *cycles) parity += static_cast<int>(c.size()) - 1;
        if (parity % 2 == 0) members.push_back(x);
      } else {
        bool moves = false;
        for (const auto& c : *cycles) moves = moves || std::find(c.begin(), c.end(), k) != c.end();
        if (!moves) members.push_back(x);
      }
    }
    return Subgroup{g, members};
  }

  if (sel == "factor1" || sel == "factor2") {
    const auto id = parse_pair(g->element_name(g->identity()));
    if (!id) throw GroupError(sel + " needs a direct-product group");
    std::vector<int> members;
    for (int x = 0; x < g->order(); ++x) {
      const auto p = parse_pair(g->element_name(x));
      if (!p) throw GroupError(sel + " needs a direct-product group");
      if (sel == "factor1" ? p->second == id->second : p->first == id->first) members.push_back(x);
    }
    return Subgroup{g, members};
  }

  std::vector<int> gens;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    const auto x = g->find(tok);
    if (!x) throw GroupError(fmt::format("unknown element '{}' in selector", tok));
    gens.push_back(*x);
    tok.clear();
  };
  for (char c : sel) {
    if (c == ';' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      tok += c;
  }
  flush();
  return generated_subgroup(g, gens);
}

// ---------------------------------------------------------------------------
// characters

int CharacterGroup::conjugate(int k) const {
  for (int l = 0; l < table.rows(); ++l)
    if ((table.row(l) - table.row(k).conjugate()).cwiseAbs().maxCoeff() < 1e-9) return l;
  throw GroupError("character table is not closed under conjugation");
}

CharacterGroup character_group(const FiniteGroup& h) {
  if (!h.is_abelian()) throw GroupError(h.name() + " is not abelian");
  const int n = h.order();
  // Build up H one cyclic extension K -> <K, x> at a time; every character
  // of K extends in m ways, m the order of x modulo K.
  std::vector<int> members{h.identity()};
  std::vector<char> in(n, 0);
  in[h.identity()] = 1;
  std::vector<std::vector<cplx>> chars{std::vector<cplx>(n, 0.0)};
  chars[0][h.identity()] = 1.0;

  for (int x = 0; x < n; ++x) {
    if (in[x]) continue;
    int m = 1;
    int xm = x;
    while (!in[xm]) {
      xm = h.mul(xm, x);
      ++m;
    }
    const std::vector<int> old = members;
    for (int i = 1; i < m; ++i) {
      int xi = x;
      for (int k = 1; k < i; ++k) xi = h.mul(xi, x);
      for (int k : old) {
        const int y = h.mul(xi, k);
        in[y] = 1;
        members.push_back(y);
      }
    }
    std::vector<std::vector<cplx>> next;
    for (const auto& chi : chars) {
      const cplx base = std::pow(chi[xm], 1.0 / m);
      for (int r = 0; r < m; ++r) {
        const cplx w = base * std::polar(1.0, 2.0 * std::numbers::pi * r / m);
        std::vector<cplx> ext(n, 0.0);
        cplx wi = 1.0;
        int xi = h.identity();
        for (int i = 0; i < m; ++i) {
          for (int k : old) ext[h.mul(xi, k)] = wi * chi[k];
          wi *= w;
          xi = h.mul(xi, x);
        }
        next.push_back(std::move(ext));
      }
    }
    chars = std::move(next);
  }

  CharacterGroup out{h, ComplexMatrix(n, n)};
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      cplx v = chars[k][a];
      // snap to exact values where the root of unity is rational
      if (std::abs(v.real()) < 1e-15) v.real(0.0);
      if (std::abs(v.imag()) < 1e-15) v.imag(0.0);
      out.table(k, a) = v;
    }
  if (character_defect(out) > 1e-9) throw GroupError("character table construction failed for " + h.name());
  return out;
}

double character_defect(const CharacterGroup& c) {
  const FiniteGroup& h = c.base;
  const int n = h.order();
  double d = 0.0;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      d = std::max(d, std::abs(std::abs(c.table(k, a)) - 1.0));
      for (int b = 0; b < n; ++b) d = std::max(d, std::abs(c.table(k, h.mul(a, b)) - c.table(k, a) * c.table(k, b)));
    }
  const ComplexMatrix gram = c.table * c.table.adjoint();
  d = std::max(d, max_abs(ComplexMatrix(gram - n * ComplexMatrix::Identity(n, n))));
  return d;
}

}  // namespace bqg
