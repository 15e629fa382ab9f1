#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meandim/subshift.hpp"
#include "meandim/tiling.hpp"
#include "meandim/transport.hpp"

namespace meandim {

/// Deterministic PRNG (splitmix64 core); the single seed flag drives all sampling.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Random rational in [0, 1] with denominator bound.
    Rational unit_rational(std::uint64_t max_denominator);
    /// Random point of the k-simplex (positive rational weights, sum 1).
    std::vector<Rational> simplex_point(std::size_t k, std::uint64_t scale = 16);
    /// Random point supported on `support` of the k coordinates.
    std::vector<Rational> sparse_simplex_point(std::size_t k, std::size_t support,
                                               std::uint64_t scale = 16);

private:
    std::uint64_t state_;
};

/// Random metric on n points: integer table pushed through the min-plus
/// closure, so the triangle inequality holds exactly.
FiniteMetric random_metric(Prng& rng, std::size_t n, std::uint64_t max_entry = 12);
/// Random measure supported on a subset of n points.
DiscreteMeasure random_measure(Prng& rng, std::size_t n);

std::string tiling_to_json(const TilingScheme& scheme);
TilingScheme tiling_from_json(const std::string& text);

std::string subshift_to_json(const SubshiftSpec& spec);
SubshiftSpec subshift_from_json(const std::string& text);

/// Measures-and-metric document for the transport command. The optional
/// action block names finite-order point maps (isometries of the table),
/// enabling the dynamical distance max_g W(g mu, g nu).
struct TransportInstance {
    FiniteMetric metric;
    DiscreteMeasure mu, nu;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> action;  // name -> point map
};
TransportInstance transport_instance_from_json(const std::string& text);
std::string transport_instance_to_json(const TransportInstance& inst);

/// RFC-4180-style CSV: fields with commas, quotes or newlines get quoted.
class CsvWriter {
public:
    void row(const std::vector<std::string>& fields);
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

/// Writes via a temp file and rename, so outputs appear atomically.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace meandim
