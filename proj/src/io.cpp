#include "meandim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace meandim {

using nlohmann::json;

std::uint64_t Prng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Prng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Prng::below: n must be positive");
    return next() % n;
}

Rational Prng::unit_rational(std::uint64_t max_denominator) {
    std::uint64_t q = 1 + below(max_denominator);
    std::uint64_t p = below(q + 1);
    return Rational(static_cast<long long>(p), static_cast<long long>(q));
}

std::vector<Rational> Prng::simplex_point(std::size_t k, std::uint64_t scale) {
    std::vector<long long> raw(k);
    long long total = 0;
    for (std::size_t i = 0; i < k; ++i) {
        raw[i] = static_cast<long long>(1 + below(scale));
        total += raw[i];
    }
    std::vector<Rational> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = Rational(raw[i], total);
    return out;
}

std::vector<Rational> Prng::sparse_simplex_point(std::size_t k, std::size_t support,
                                                 std::uint64_t scale) {
    if (support == 0 || support > k)
        throw std::invalid_argument("sparse_simplex_point: bad support size");
    std::vector<std::size_t> ids(k);
    for (std::size_t i = 0; i < k; ++i) ids[i] = i;
    for (std::size_t i = k; i > 1; --i) std::swap(ids[i - 1], ids[below(i)]);
    ids.resize(support);
    std::vector<Rational> weights = simplex_point(support, scale);
    std::vector<Rational> out(k, Rational(0));
    for (std::size_t i = 0; i < support; ++i) out[ids[i]] = weights[i];
    return out;
}

FiniteMetric random_metric(Prng& rng, std::size_t n, std::uint64_t max_entry) {
    FiniteMetric m;
    m.dist.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational d(static_cast<long long>(1 + rng.below(max_entry)));
            m.dist[i][j] = d;
            m.dist[j][i] = d;
        }
    // min-plus closure: entries stay >= 1, triangle inequality becomes exact
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                Rational via = m.dist[i][k] + m.dist[k][j];
                if (k != i && k != j && via < m.dist[i][j]) {
                    m.dist[i][j] = via;
                    m.dist[j][i] = via;
                }
            }
    m.validate();
    return m;
}

DiscreteMeasure random_measure(Prng& rng, std::size_t n) {
    // pick a nonempty support, then positive weights
    std::size_t count = 1 + rng.below(n);
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
    ids.resize(count);

    std::vector<long long> raw(count);
    long long total = 0;
    for (std::size_t i = 0; i < count; ++i) {
        raw[i] = static_cast<long long>(1 + rng.below(16));
        total += raw[i];
    }
    std::map<std::size_t, Rational> w;
    for (std::size_t i = 0; i < count; ++i) w[ids[i]] = Rational(raw[i], total);
    return DiscreteMeasure(std::move(w));
}

namespace {

json element_to_json(const Element& e, GroupFamily family) {
    if (family == GroupFamily::IntegerLine) return json(e.x);
    return json::array({e.x, e.y});
}

Element element_from_json(const json& j, GroupFamily family) {
    if (family == GroupFamily::IntegerLine) return {j.get<std::int64_t>(), 0};
    return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>()};
}

json subset_to_json(const FiniteSubset& f, GroupFamily family) {
    json arr = json::array();
    for (const Element& e : f.elements()) arr.push_back(element_to_json(e, family));
    return arr;
}

FiniteSubset subset_from_json(const json& j, GroupFamily family) {
    std::vector<Element> e;
    for (const auto& v : j) e.push_back(element_from_json(v, family));
    return FiniteSubset(std::move(e));
}

}  // namespace

std::string tiling_to_json(const TilingScheme& scheme) {
    json doc;
    doc["family"] = GroupContext(scheme.family).family_name();
    doc["portion_boundaries"] = scheme.folner.boundaries;
    json sets = json::array();
    for (const FiniteSubset& f : scheme.folner.sets) sets.push_back(subset_to_json(f, scheme.family));
    doc["folner"] = std::move(sets);
    json centers = json::array();
    for (const auto& [kn, c] : scheme.centers) {
        json entry;
        entry["k"] = kn.first;
        entry["n"] = kn.second;
        entry["centers"] = subset_to_json(c, scheme.family);
        centers.push_back(std::move(entry));
    }
    doc["centers"] = std::move(centers);
    return doc.dump(2) + "\n";
}

TilingScheme tiling_from_json(const std::string& text) {
    json doc = json::parse(text);
    TilingScheme s;
    s.family = GroupContext::family_from_name(doc.at("family").get<std::string>());
    s.folner.boundaries = doc.at("portion_boundaries").get<std::vector<std::size_t>>();
    if (s.folner.boundaries.empty() || s.folner.boundaries.front() != 0)
        throw std::invalid_argument("tiling_from_json: portion boundaries must start at 0");
    for (std::size_t i = 1; i < s.folner.boundaries.size(); ++i)
        if (s.folner.boundaries[i] <= s.folner.boundaries[i - 1])
            throw std::invalid_argument("tiling_from_json: portion boundaries must increase");
    for (const auto& f : doc.at("folner")) s.folner.sets.push_back(subset_from_json(f, s.family));
    GroupContext ctx(s.family);
    for (const FiniteSubset& f : s.folner.sets)
        if (!f.contains(ctx.identity()))
            throw std::invalid_argument("tiling_from_json: every Folner set must contain the identity");
    for (const auto& entry : doc.at("centers")) {
        std::size_t k = entry.at("k").get<std::size_t>();
        std::size_t n = entry.at("n").get<std::size_t>();
        s.centers[{k, n}] = subset_from_json(entry.at("centers"), s.family);
    }
    return s;
}

std::string subshift_to_json(const SubshiftSpec& spec) {
    json doc;
    doc["family"] = GroupContext(spec.family).family_name();
    doc["alphabet_size"] = spec.alphabet_size;
    json words = json::array();
    for (const auto& w : spec.forbidden) {
        json word = json::array();
        for (Symbol s : w) word.push_back(static_cast<int>(s));
        words.push_back(std::move(word));
    }
    doc["forbidden"] = std::move(words);
    doc["safe_symbol"] = static_cast<int>(spec.safe_symbol);
    return doc.dump(2) + "\n";
}

SubshiftSpec subshift_from_json(const std::string& text) {
    json doc = json::parse(text);
    SubshiftSpec spec;
    spec.family = GroupContext::family_from_name(doc.at("family").get<std::string>());
    spec.alphabet_size = doc.at("alphabet_size").get<int>();
    for (const auto& w : doc.at("forbidden")) {
        std::vector<Symbol> word;
        for (const auto& s : w) word.push_back(static_cast<Symbol>(s.get<int>()));
        spec.forbidden.push_back(std::move(word));
    }
    if (doc.contains("safe_symbol")) spec.safe_symbol = static_cast<Symbol>(doc["safe_symbol"].get<int>());
    spec.validate();
    return spec;
}

namespace {

DiscreteMeasure measure_from_json(const json& j, const std::vector<std::string>& labels) {
    std::map<std::size_t, Rational> w;
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto pos = std::find(labels.begin(), labels.end(), it.key());
        if (pos == labels.end())
            throw std::invalid_argument("transport instance: unknown point '" + it.key() + "'");
        w[static_cast<std::size_t>(pos - labels.begin())] =
            Rational::from_string(it.value().get<std::string>());
    }
    DiscreteMeasure m(std::move(w));
    m.validate();
    return m;
}

}  // namespace

TransportInstance transport_instance_from_json(const std::string& text) {
    json doc = json::parse(text);
    TransportInstance inst;
    inst.metric.labels = doc.at("points").get<std::vector<std::string>>();
    std::size_t n = inst.metric.labels.size();
    inst.metric.dist.assign(n, std::vector<Rational>(n, Rational(0)));
    const json& table = doc.at("metric");
    if (table.size() != n) throw std::invalid_argument("transport instance: metric table size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inst.metric.dist[i][j] = Rational::from_string(table.at(i).at(j).get<std::string>());
    inst.metric.validate();
    inst.mu = measure_from_json(doc.at("mu"), inst.metric.labels);
    inst.nu = measure_from_json(doc.at("nu"), inst.metric.labels);
    if (doc.contains("action")) {
        for (auto it = doc["action"].begin(); it != doc["action"].end(); ++it) {
            std::vector<std::size_t> map(n);
            for (std::size_t p = 0; p < n; ++p) {
                std::string target = it.value().at(inst.metric.labels[p]).get<std::string>();
                auto pos = std::find(inst.metric.labels.begin(), inst.metric.labels.end(), target);
                if (pos == inst.metric.labels.end())
                    throw std::invalid_argument("transport instance: action maps to unknown point '" +
                                                target + "'");
                map[p] = static_cast<std::size_t>(pos - inst.metric.labels.begin());
            }
            inst.action.emplace_back(it.key(), std::move(map));
        }
    }
    return inst;
}

std::string transport_instance_to_json(const TransportInstance& inst) {
    json doc;
    doc["points"] = inst.metric.labels;
    json table = json::array();
    for (const auto& row : inst.metric.dist) {
        json r = json::array();
        for (const Rational& d : row) r.push_back(d.to_string());
        table.push_back(std::move(r));
    }
    doc["metric"] = std::move(table);
    json mu, nu;
    for (const auto& [p, w] : inst.mu.weights()) mu[inst.metric.labels[p]] = w.to_string();
    for (const auto& [p, w] : inst.nu.weights()) nu[inst.metric.labels[p]] = w.to_string();
    doc["mu"] = std::move(mu);
    doc["nu"] = std::move(nu);
    return doc.dump(2) + "\n";
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) text_ += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            text_ += '"';
            for (char c : f) {
                if (c == '"') text_ += '"';
                text_ += c;
            }
            text_ += '"';
        } else {
            text_ += f;
        }
    }
    text_ += '\n';
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move '" + tmp + "' into place");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace meandim
