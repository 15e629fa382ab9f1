#include "meandim/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace meandim {

void SubshiftSpec::validate() const {
    if (alphabet_size < 2) throw std::invalid_argument("SubshiftSpec: alphabet size must be >= 2");
    if (family == GroupFamily::IntegerGrid2D && !forbidden.empty())
        throw std::invalid_argument("SubshiftSpec: grid subshifts are full shifts only");
    for (const auto& w : forbidden) {
        if (w.empty()) throw std::invalid_argument("SubshiftSpec: empty forbidden word");
        for (Symbol s : w)
            if (static_cast<int>(s) >= alphabet_size)
                throw std::invalid_argument("SubshiftSpec: forbidden word symbol out of range");
    }
    if (static_cast<int>(safe_symbol) >= alphabet_size)
        throw std::invalid_argument("SubshiftSpec: safe symbol out of range");
}

std::size_t SubshiftSpec::max_forbidden_length() const {
    std::size_t m = 0;
    for (const auto& w : forbidden) m = std::max(m, w.size());
    return m;
}

SubshiftSpec SubshiftSpec::full_shift(GroupFamily family, int alphabet) {
    SubshiftSpec s;
    s.family = family;
    s.alphabet_size = alphabet;
    return s;
}

SubshiftSpec SubshiftSpec::golden_mean() {
    SubshiftSpec s;
    s.family = GroupFamily::IntegerLine;
    s.alphabet_size = 2;
    s.forbidden = {{1, 1}};
    return s;
}

bool word_admissible(const SubshiftSpec& spec, const std::vector<Symbol>& word) {
    for (const auto& w : spec.forbidden) {
        if (w.size() > word.size()) continue;
        for (std::size_t s = 0; s + w.size() <= word.size(); ++s) {
            bool match = true;
            for (std::size_t i = 0; i < w.size() && match; ++i) match = word[s + i] == w[i];
            if (match) return false;
        }
    }
    return true;
}

namespace {

bool cyclic_admissible(const SubshiftSpec& spec, const std::vector<Symbol>& cells) {
    std::size_t p = cells.size();
    for (const auto& w : spec.forbidden) {
        if (w.size() > p) return false;  // a short period cannot dodge a longer word check
        for (std::size_t s = 0; s < p; ++s) {
            bool match = true;
            for (std::size_t i = 0; i < w.size() && match; ++i) match = cells[(s + i) % p] == w[i];
            if (match) return false;
        }
    }
    return true;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Configuration Configuration::periodic_line(const SubshiftSpec& spec, std::int64_t lo,
                                           std::vector<Symbol> window, std::size_t pad) {
    if (window.empty()) throw std::invalid_argument("Configuration: empty window");
    Configuration c;
    c.family_ = GroupFamily::IntegerLine;
    c.lo_x_ = lo;
    c.cells_ = std::move(window);
    c.cells_.insert(c.cells_.end(), pad, spec.safe_symbol);
    c.period_x_ = static_cast<std::int64_t>(c.cells_.size());
    if (!cyclic_admissible(spec, c.cells_))
        throw std::runtime_error("Configuration: periodic completion contains a forbidden word");
    return c;
}

Configuration Configuration::periodic_grid(const SubshiftSpec& spec, std::int64_t lo_x,
                                           std::int64_t lo_y, std::size_t width, std::size_t height,
                                           std::vector<Symbol> box, std::size_t pad) {
    if (box.size() != width * height) throw std::invalid_argument("Configuration: box size mismatch");
    Configuration c;
    c.family_ = GroupFamily::IntegerGrid2D;
    c.lo_x_ = lo_x;
    c.lo_y_ = lo_y;
    c.period_x_ = static_cast<std::int64_t>(width + pad);
    c.period_y_ = static_cast<std::int64_t>(height + pad);
    c.cells_.assign(static_cast<std::size_t>(c.period_x_ * c.period_y_), spec.safe_symbol);
    for (std::size_t j = 0; j < height; ++j)
        for (std::size_t i = 0; i < width; ++i)
            c.cells_[j * static_cast<std::size_t>(c.period_x_) + i] = box[j * width + i];
    return c;
}

Symbol Configuration::at(Element g) const {
    std::int64_t ix = floor_mod(g.x - lo_x_, period_x_);
    if (family_ == GroupFamily::IntegerLine) return cells_[static_cast<std::size_t>(ix)];
    std::int64_t iy = floor_mod(g.y - lo_y_, period_y_);
    return cells_[static_cast<std::size_t>(iy * period_x_ + ix)];
}

Configuration Configuration::shifted(Element g) const {
    Configuration c = *this;
    c.lo_x_ -= g.x;
    c.lo_y_ -= g.y;
    return c;
}

bool Configuration::same_point(const Configuration& o) const {
    std::int64_t lx = std::lcm(period_x_, o.period_x_);
    std::int64_t ly = family_ == GroupFamily::IntegerLine ? 1 : std::lcm(period_y_, o.period_y_);
    for (std::int64_t y = 0; y < ly; ++y)
        for (std::int64_t x = 0; x < lx; ++x)
            if (at({x, y}) != o.at({x, y})) return false;
    return true;
}

namespace {

// Maximal runs of consecutive integers in a sorted line subset.
std::vector<std::size_t> run_lengths(const FiniteSubset& f) {
    std::vector<std::size_t> runs;
    const auto& e = f.elements();
    std::size_t start = 0;
    for (std::size_t i = 1; i <= e.size(); ++i) {
        if (i == e.size() || e[i].x != e[i - 1].x + 1) {
            runs.push_back(i - start);
            start = i;
        }
    }
    return runs;
}

// Enumerate admissible words of a given (small) length.
void enumerate_words(const SubshiftSpec& spec, std::size_t len, std::vector<Symbol>& word,
                     const std::function<void(const std::vector<Symbol>&)>& sink) {
    if (word.size() == len) {
        sink(word);
        return;
    }
    for (int a = 0; a < spec.alphabet_size; ++a) {
        word.push_back(static_cast<Symbol>(a));
        // only suffix constraints can newly fail
        bool ok = true;
        for (const auto& w : spec.forbidden) {
            if (w.size() > word.size()) continue;
            bool match = true;
            for (std::size_t i = 0; i < w.size() && match; ++i)
                match = word[word.size() - w.size() + i] == w[i];
            if (match) {
                ok = false;
                break;
            }
        }
        if (ok) enumerate_words(spec, len, word, sink);
        word.pop_back();
    }
}

// Shared DP driver: Count is BigInt (exact) or double (normalized, log2 out).
struct RunCounter {
    const SubshiftSpec& spec;
    std::size_t suffix_len;
    std::vector<std::vector<Symbol>> states;          // admissible words of suffix_len
    std::map<std::vector<Symbol>, std::size_t> index; // state -> position

    explicit RunCounter(const SubshiftSpec& s) : spec(s) {
        suffix_len = spec.max_forbidden_length() == 0 ? 0 : spec.max_forbidden_length() - 1;
        double state_estimate = std::pow(spec.alphabet_size, static_cast<double>(suffix_len));
        if (state_estimate > 65536.0)
            throw std::length_error("count_patterns: transfer-matrix state space exceeds budget");
        std::vector<Symbol> w;
        enumerate_words(spec, suffix_len, w, [&](const std::vector<Symbol>& word) {
            index[word] = states.size();
            states.push_back(word);
        });
    }

    // next-state table: state x symbol -> state index or -1 (forbidden)
    std::vector<std::vector<int>> transitions() const {
        std::vector<std::vector<int>> t(states.size(), std::vector<int>(spec.alphabet_size, -1));
        for (std::size_t s = 0; s < states.size(); ++s) {
            for (int a = 0; a < spec.alphabet_size; ++a) {
                std::vector<Symbol> word = states[s];
                word.push_back(static_cast<Symbol>(a));
                bool ok = true;
                for (const auto& w : spec.forbidden) {
                    if (w.size() > word.size()) continue;
                    bool match = true;
                    for (std::size_t i = 0; i < w.size() && match; ++i)
                        match = word[word.size() - w.size() + i] == w[i];
                    if (match) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                std::vector<Symbol> next(word.end() - static_cast<std::ptrdiff_t>(suffix_len), word.end());
                auto it = index.find(next);
                if (it != index.end()) t[s][a] = static_cast<int>(it->second);
            }
        }
        return t;
    }

    BigInt count(std::size_t len) const {
        if (len == 0) return BigInt(1);
        if (len <= suffix_len) {
            // count admissible words directly
            std::size_t n = 0;
            std::vector<Symbol> w;
            enumerate_words(spec, len, w, [&](const std::vector<Symbol>&) { ++n; });
            return BigInt(static_cast<long long>(n));
        }
        auto trans = transitions();
        std::vector<BigInt> v(states.size(), BigInt(1));
        for (std::size_t pos = suffix_len; pos < len; ++pos) {
            std::vector<BigInt> nv(states.size(), BigInt(0));
            for (std::size_t s = 0; s < states.size(); ++s)
                for (int a = 0; a < spec.alphabet_size; ++a)
                    if (trans[s][a] >= 0) nv[static_cast<std::size_t>(trans[s][a])] += v[s];
            v = std::move(nv);
        }
        BigInt total(0);
        for (const BigInt& b : v) total += b;
        return total;
    }

    double log2_count(std::size_t len) const {
        if (len <= suffix_len || suffix_len == 0) {
            if (suffix_len == 0 && len > 0) {
                // full shift or length-1 constraints: per-site factor
                int allowed = 0;
                for (int a = 0; a < spec.alphabet_size; ++a) {
                    std::vector<Symbol> w{static_cast<Symbol>(a)};
                    if (word_admissible(spec, w)) ++allowed;
                }
                if (allowed == 0) return -std::numeric_limits<double>::infinity();
                return static_cast<double>(len) * std::log2(static_cast<double>(allowed));
            }
            return std::log2(count(len).to_double());
        }
        auto trans = transitions();
        std::vector<double> v(states.size(), 1.0);
        double acc = std::log2(static_cast<double>(states.size()));
        for (double& x : v) x /= static_cast<double>(states.size());
        for (std::size_t pos = suffix_len; pos < len; ++pos) {
            std::vector<double> nv(states.size(), 0.0);
            for (std::size_t s = 0; s < states.size(); ++s)
                for (int a = 0; a < spec.alphabet_size; ++a)
                    if (trans[s][a] >= 0) nv[static_cast<std::size_t>(trans[s][a])] += v[s];
            double total = 0;
            for (double x : nv) total += x;
            acc += std::log2(total);
            for (double& x : nv) x /= total;
            v = std::move(nv);
        }
        return acc;
    }
};

}  // namespace

BigInt count_patterns(const SubshiftSpec& spec, const FiniteSubset& f) {
    spec.validate();
    if (f.empty()) return BigInt(1);
    if (spec.is_full_shift()) {
        if (static_cast<double>(f.size()) * std::log2(spec.alphabet_size) > (1 << 22))
            throw std::length_error("count_patterns: count exceeds size budget, use log2_pattern_count");
        BigInt r(1);
        for (std::size_t i = 0; i < f.size(); ++i) r *= BigInt(spec.alphabet_size);
        return r;
    }
    RunCounter rc(spec);
    BigInt r(1);
    for (std::size_t len : run_lengths(f)) r *= rc.count(len);
    return r;
}

double log2_pattern_count(const SubshiftSpec& spec, const FiniteSubset& f) {
    spec.validate();
    if (f.empty()) return 0.0;
    if (spec.is_full_shift())
        return static_cast<double>(f.size()) * std::log2(static_cast<double>(spec.alphabet_size));
    RunCounter rc(spec);
    double r = 0;
    for (std::size_t len : run_lengths(f)) r += rc.log2_count(len);
    return r;
}

namespace {

// Smallest word length among group elements where x and y disagree, or nullopt.
// The pair (x,y) is lcm-periodic, so the fundamental domain decides.
std::optional<std::int64_t> min_difference_length(const Configuration& x, const Configuration& y,
                                                  const GroupContext& ctx) {
    std::int64_t lx = std::lcm(x.period_x(), y.period_x());
    std::int64_t ly = ctx.family() == GroupFamily::IntegerLine ? 1 : std::lcm(x.period_y(), y.period_y());
    std::optional<std::int64_t> best;
    for (std::int64_t b = 0; b < ly; ++b) {
        for (std::int64_t a = 0; a < lx; ++a) {
            if (x.at({a, b}) == y.at({a, b})) continue;
            std::int64_t da = std::min(a, lx - a);
            std::int64_t len;
            if (ctx.family() == GroupFamily::IntegerLine) {
                len = da;
            } else {
                std::int64_t db = std::min(b, ly - b);
                len = std::max(da, db);
            }
            if (!best || len < *best) best = len;
        }
    }
    return best;
}

}  // namespace

MetricValue shift_metric(const Configuration& x, const Configuration& y, std::int64_t radius,
                         const GroupContext& ctx) {
    if (radius < 0) throw std::invalid_argument("shift_metric: radius must be >= 0");
    auto d = min_difference_length(x, y, ctx);
    if (!d) return {Rational(0), true};
    if (*d <= radius) return {Rational::pow2(static_cast<int>(-*d)), true};
    return {Rational::pow2(static_cast<int>(-radius)), false};
}

Rational shift_distance_exact(const Configuration& x, const Configuration& y, const GroupContext& ctx) {
    auto d = min_difference_length(x, y, ctx);
    if (!d) return Rational(0);
    return Rational::pow2(static_cast<int>(-*d));
}

Rational cylinder_distance(const Cylinder& u0, const Cylinder& u1) {
    if (u0.symbol == u1.symbol)
        throw std::invalid_argument("cylinder_distance: cylinders must fix distinct symbols");
    return Rational(1);
}

}  // namespace meandim
