#include "meandim/independence.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace meandim {

namespace {

// Depth-first completion of a line window with some positions pinned.
// Free positions are tried in symbol order, so the completion is canonical.
bool fill_line_window(const SubshiftSpec& spec, std::vector<std::optional<Symbol>>& window,
                      std::size_t pos, std::vector<Symbol>& out) {
    if (pos == window.size()) {
        out.resize(window.size());
        for (std::size_t i = 0; i < window.size(); ++i) out[i] = *window[i];
        return true;
    }
    auto admissible_at = [&](std::size_t p) {
        for (const auto& w : spec.forbidden) {
            if (w.size() > p + 1) continue;
            bool match = true;
            for (std::size_t i = 0; i < w.size() && match; ++i) {
                const auto& cell = window[p + 1 - w.size() + i];
                match = cell.has_value() && *cell == w[i];
            }
            if (match) return false;
        }
        return true;
    };
    if (window[pos].has_value()) {
        if (!admissible_at(pos)) return false;
        return fill_line_window(spec, window, pos + 1, out);
    }
    for (int a = 0; a < spec.alphabet_size; ++a) {
        window[pos] = static_cast<Symbol>(a);
        if (admissible_at(pos) && fill_line_window(spec, window, pos + 1, out)) {
            window[pos] = std::nullopt;
            return true;
        }
    }
    window[pos] = std::nullopt;
    return false;
}

std::optional<Configuration> try_realize(const SubshiftSpec& spec, const std::vector<Element>& j,
                                         const std::vector<Symbol>& zeta, const Cylinder& u0,
                                         const Cylinder& u1) {
    if (j.empty()) throw std::invalid_argument("realize: empty J");
    if (zeta.size() != j.size()) throw std::invalid_argument("realize: zeta not total on J");
    auto pin = [&](std::size_t idx) { return zeta[idx] == 0 ? u0.symbol : u1.symbol; };

    if (spec.family == GroupFamily::IntegerGrid2D) {
        std::int64_t lo_x = j.front().x, hi_x = j.front().x, lo_y = j.front().y, hi_y = j.front().y;
        for (const Element& g : j) {
            lo_x = std::min(lo_x, g.x);
            hi_x = std::max(hi_x, g.x);
            lo_y = std::min(lo_y, g.y);
            hi_y = std::max(hi_y, g.y);
        }
        std::size_t w = static_cast<std::size_t>(hi_x - lo_x + 1);
        std::size_t h = static_cast<std::size_t>(hi_y - lo_y + 1);
        std::vector<Symbol> box(w * h, spec.safe_symbol);
        for (std::size_t i = 0; i < j.size(); ++i)
            box[static_cast<std::size_t>(j[i].y - lo_y) * w + static_cast<std::size_t>(j[i].x - lo_x)] =
                pin(i);
        return Configuration::periodic_grid(spec, lo_x, lo_y, w, h, std::move(box), 1);
    }

    std::int64_t lo = j.front().x, hi = j.back().x;
    std::vector<std::optional<Symbol>> window(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < j.size(); ++i) window[static_cast<std::size_t>(j[i].x - lo)] = pin(i);
    std::vector<Symbol> filled;
    if (!fill_line_window(spec, window, 0, filled)) return std::nullopt;
    std::size_t pad = std::max<std::size_t>(spec.max_forbidden_length(), 1);
    // The safe padding can itself clash with the window ends for exotic
    // forbidden lists; periodic_line rejects that, which we surface as blocked.
    try {
        return Configuration::periodic_line(spec, lo, std::move(filled), pad);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
}

std::string describe_assignment(const std::vector<Element>& j, const std::vector<Symbol>& zeta,
                                GroupFamily family) {
    std::string s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ", ";
        if (family == GroupFamily::IntegerLine)
            s += std::to_string(j[i].x);
        else
            s += "(" + std::to_string(j[i].x) + "," + std::to_string(j[i].y) + ")";
        s += "->" + std::to_string(static_cast<int>(zeta[i]));
    }
    return s;
}

std::vector<Symbol> zeta_from_code(std::uint64_t code, std::size_t n) {
    std::vector<Symbol> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = static_cast<Symbol>((code >> (n - 1 - i)) & 1u);
    return z;
}

// Certifies every assignment on cand; returns realizations or nullopt on the
// first blocked assignment. `checks` counts realizability attempts.
std::optional<std::vector<Configuration>> certify_all(const SubshiftSpec& spec,
                                                      const std::vector<Element>& cand,
                                                      const Cylinder& u0, const Cylinder& u1,
                                                      std::uint64_t& checks) {
    std::vector<Configuration> certs;
    std::uint64_t total = 1ull << cand.size();
    certs.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t code = 0; code < total; ++code) {
        ++checks;
        auto c = try_realize(spec, cand, zeta_from_code(code, cand.size()), u0, u1);
        if (!c) return std::nullopt;
        certs.push_back(std::move(*c));
    }
    return certs;
}

}  // namespace

Configuration realize_witness(const SubshiftSpec& spec, const std::vector<Element>& j_sorted,
                              const std::vector<Symbol>& zeta, const Cylinder& u0, const Cylinder& u1) {
    spec.validate();
    auto c = try_realize(spec, j_sorted, zeta, u0, u1);
    if (!c)
        throw WitnessBlocked("no admissible completion for assignment {" +
                             describe_assignment(j_sorted, zeta, spec.family) + "}");
    return *c;
}

IndependenceResult find_independence_set(const SubshiftSpec& spec, const Cylinder& u0,
                                         const Cylinder& u1, const FiniteSubset& f_n,
                                         const IndependenceBudget& budget) {
    spec.validate();
    if (u0.symbol == u1.symbol)
        throw std::invalid_argument("find_independence_set: cylinders must fix distinct symbols");
    if (f_n.empty()) throw std::invalid_argument("find_independence_set: empty F_n");

    const std::vector<Element>& base = f_n.elements();
    std::uint64_t checks = 0;

    // Pair realizability is necessary for full realizability and prunes most
    // subsets cheaply. Cached across the whole search.
    std::map<std::pair<std::size_t, std::size_t>, bool> pair_ok;
    auto pair_clean = [&](std::size_t a, std::size_t b) {
        auto key = std::make_pair(a, b);
        auto it = pair_ok.find(key);
        if (it != pair_ok.end()) return it->second;
        bool ok = true;
        for (std::uint64_t code = 0; code < 4 && ok; ++code) {
            ++checks;
            ok = try_realize(spec, {base[a], base[b]}, zeta_from_code(code, 2), u0, u1).has_value();
        }
        pair_ok[key] = ok;
        return ok;
    };

    auto finish = [&](std::vector<Element> j, std::vector<Configuration> certs, bool exhaustive) {
        IndependenceResult r;
        r.delta = Rational(static_cast<long long>(j.size()), static_cast<long long>(base.size()));
        r.j = std::move(j);
        r.certified = true;
        r.exhaustive = exhaustive;
        r.checks_used = checks;
        if (r.j.size() <= 12) r.certificates = std::move(certs);
        return r;
    };

    bool search_aborted = false;
    bool sizes_skipped = false;
    for (std::size_t s = base.size(); s >= 1 && !search_aborted; --s) {
        if (s >= 64 || (std::uint64_t{1} << s) > budget.certification_cap) {
            sizes_skipped = true;  // cannot certify this size
            continue;
        }
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            if (checks > budget.search_checks) {
                search_aborted = true;
                break;
            }
            bool clean = true;
            for (std::size_t a = 0; a < s && clean; ++a)
                for (std::size_t b = a + 1; b < s && clean; ++b) clean = pair_clean(idx[a], idx[b]);
            if (clean) {
                std::vector<Element> cand(s);
                for (std::size_t i = 0; i < s; ++i) cand[i] = base[idx[i]];
                if (auto certs = certify_all(spec, cand, u0, u1, checks))
                    return finish(std::move(cand), std::move(*certs), !sizes_skipped);
            }
            // next lexicographic combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == base.size() - s + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t k = i; k < s; ++k) idx[k] = idx[k - 1] + 1;
        }
    }

    if (!search_aborted) throw std::runtime_error("find_independence_set: no certifiable J exists");

    // Greedy growth, each step fully re-certified.
    std::vector<std::size_t> chosen;
    std::vector<Configuration> best_certs;
    for (std::size_t g = 0; g < base.size(); ++g) {
        if ((std::uint64_t{1} << (chosen.size() + 1)) > budget.certification_cap) break;
        bool clean = true;
        for (std::size_t a : chosen)
            if (!(clean = pair_clean(a, g))) break;
        if (!clean) continue;
        std::vector<Element> cand;
        for (std::size_t a : chosen) cand.push_back(base[a]);
        cand.push_back(base[g]);
        if (auto certs = certify_all(spec, cand, u0, u1, checks)) {
            chosen.push_back(g);
            best_certs = std::move(*certs);
        }
    }
    if (chosen.empty())
        throw std::runtime_error("find_independence_set: budget exhausted without any certified J");
    std::vector<Element> j;
    for (std::size_t a : chosen) j.push_back(base[a]);
    return finish(std::move(j), std::move(best_certs), false);
}

Rational IndependenceWitness::declared_delta() const {
    if (records.empty()) throw std::logic_error("IndependenceWitness: no records");
    Rational d = records.front().delta;
    for (const auto& r : records) d = min(d, r.delta);
    return d;
}

}  // namespace meandim
