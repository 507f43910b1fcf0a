#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "internal.hpp"

namespace hidsym::sym {

namespace detail {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_mpq(const mpq_class& q) {
    std::size_t h = mpz_get_ui(q.get_num_mpz_t()) * 1000003u + mpz_sgn(q.get_num_mpz_t());
    return hash_combine(h, mpz_get_ui(q.get_den_mpz_t()));
}

}  // namespace detail

namespace {

struct Table {
    std::mutex mutex;
    std::unordered_multimap<std::size_t, const AtomNode*> index;
    std::deque<AtomNode> storage;  // stable addresses, never freed
};

Table& table() {
    static Table t;
    return t;
}

bool same_node(const AtomNode& a, const AtomNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case AtomKind::Symbol:
            return a.name == b.name;
        case AtomKind::Func:
            return a.kernel == b.kernel && a.payload == b.payload;
        case AtomKind::Exp:
        case AtomKind::Power:
            return a.payload == b.payload;
    }
    return false;
}

Atom intern(AtomNode node) {
    std::size_t h = std::hash<int>()(static_cast<int>(node.kind));
    h = detail::hash_combine(h, std::hash<std::string>()(node.name));
    h = detail::hash_combine(h, static_cast<std::size_t>(node.kernel));
    h = detail::hash_combine(h, node.payload.hash());
    node.hash = h;
    if (node.kind == AtomKind::Symbol) {
        node.free_symbols = {node.name};
    } else {
        auto fs = free_symbols(node.payload);
        node.free_symbols.assign(fs.begin(), fs.end());
    }
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    auto range = t.index.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
        if (same_node(*it->second, node)) return it->second;
    }
    t.storage.push_back(std::move(node));
    const AtomNode* p = &t.storage.back();
    t.index.emplace(h, p);
    return p;
}

}  // namespace

Atom intern_symbol(const std::string& name) {
    AtomNode n;
    n.kind = AtomKind::Symbol;
    n.name = name;
    return intern(std::move(n));
}

namespace detail {

Atom intern_func(Kernel k, const Expr& arg) {
    AtomNode n;
    n.kind = AtomKind::Func;
    n.kernel = k;
    n.payload = arg;
    return intern(std::move(n));
}

Atom intern_exp(const Expr& exponent) {
    AtomNode n;
    n.kind = AtomKind::Exp;
    n.payload = exponent;
    return intern(std::move(n));
}

Atom intern_power(const Poly& base) {
    AtomNode n;
    n.kind = AtomKind::Power;
    n.payload = Expr::from_poly(base);
    return intern(std::move(n));
}

bool is_unit_atom(Atom a) { return a->kind == AtomKind::Exp; }

}  // namespace detail

int compare_atoms(Atom a, Atom b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
        case AtomKind::Symbol:
            return a->name < b->name ? -1 : 1;
        case AtomKind::Func:
            if (a->kernel != b->kernel)
                return static_cast<int>(a->kernel) < static_cast<int>(b->kernel) ? -1 : 1;
            return compare(a->payload, b->payload);
        case AtomKind::Exp:
        case AtomKind::Power:
            return compare(a->payload, b->payload);
    }
    return 0;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i == a.size()) return b[j].exp.positive() ? -1 : 1;
        if (j == b.size()) return a[i].exp.positive() ? 1 : -1;
        if (a[i].atom == b[j].atom) {
            if (a[i].exp != b[j].exp) return a[i].exp > b[j].exp ? 1 : -1;
            ++i;
            ++j;
            continue;
        }
        int c = compare_atoms(a[i].atom, b[j].atom);
        if (c < 0) return a[i].exp.positive() ? 1 : -1;
        return b[j].exp.positive() ? -1 : 1;
    }
    return 0;
}

}  // namespace hidsym::sym
