#include "meandim/bound.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace meandim {

void IndexM::validate(std::size_t j_size) const {
    std::vector<bool> seen(j_size, false);
    std::size_t total = 0;
    for (const auto& slot : slots) {
        for (std::size_t p : slot.positions) {
            if (p >= j_size || seen[p]) throw std::logic_error("IndexM: positions do not partition J");
            seen[p] = true;
            ++total;
        }
    }
    if (total != j_size) throw std::logic_error("IndexM: positions do not partition J");
}

std::vector<std::vector<Element>> restrict_tiling(const std::vector<Element>& j_sorted,
                                                  const std::vector<Tile>& tiles) {
    std::vector<std::vector<Element>> blocks;
    std::size_t assigned = 0;
    for (const Tile& t : tiles) {
        std::vector<Element> block;
        for (const Element& g : j_sorted)
            if (t.cells.contains(g)) block.push_back(g);
        assigned += block.size();
        blocks.push_back(std::move(block));
    }
    if (assigned != j_sorted.size())
        throw std::invalid_argument("restrict_tiling: tiles do not cover J");
    return blocks;
}

std::vector<std::size_t> select_dense_tiles(const std::vector<std::vector<Element>>& blocks,
                                            const Rational& delta,
                                            const std::vector<std::size_t>& tile_sizes) {
    if (delta.sign() <= 0 || delta > Rational(1))
        throw std::invalid_argument("select_dense_tiles: delta must lie in (0,1]");
    if (blocks.size() != tile_sizes.size())
        throw std::invalid_argument("select_dense_tiles: block/size count mismatch");
    std::vector<std::size_t> dense;
    Rational half = delta / Rational(2);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        Rational threshold = half * Rational(static_cast<long long>(tile_sizes[i]));
        if (Rational(static_cast<long long>(blocks[i].size())) >= threshold) dense.push_back(i);
    }
    return dense;
}

Rational orbit_separation_margin(const GroupContext& ctx,
                                 const std::vector<FiniteSubset>& portion_sets,
                                 const Rational& cylinder_gap) {
    if (portion_sets.empty()) throw std::invalid_argument("orbit_separation_margin: empty portion");
    std::int64_t r = 0;
    for (const FiniteSubset& f : portion_sets)
        for (const Element& g : f.elements()) r = std::max(r, ctx.length(g));
    return cylinder_gap * Rational::pow2(static_cast<int>(-r));
}

Rational separating_diameter_bound(const Rational& gamma, const Rational& diam,
                                   const std::vector<std::size_t>& portion_tile_sizes) {
    if (diam.sign() <= 0) throw std::invalid_argument("separating_diameter_bound: diam must be > 0");
    if (portion_tile_sizes.empty())
        throw std::invalid_argument("separating_diameter_bound: empty portion");
    std::size_t m = 0;
    for (std::size_t s : portion_tile_sizes) m = std::max(m, s);
    return gamma * gamma / diam / Rational::pow2(static_cast<int>(m + 1));
}

std::size_t slot_digit(const IndexSlot& slot, std::size_t code, std::size_t j_size) {
    std::size_t d = 0;
    for (std::size_t p : slot.positions) {
        d <<= 1;
        d |= (code >> (j_size - 1 - p)) & 1u;
    }
    return d;
}

std::vector<Rational> tensor_embed(const IndexM& index, std::size_t j_size,
                                   const std::vector<std::vector<Rational>>& t) {
    index.validate(j_size);
    if (t.size() != index.slots.size()) throw std::invalid_argument("tensor_embed: slot count mismatch");
    for (std::size_t m = 0; m < t.size(); ++m) {
        if (t[m].size() != index.slots[m].k())
            throw std::invalid_argument("tensor_embed: coordinate count mismatch in a slot");
        Rational sum(0);
        for (const Rational& c : t[m]) {
            if (c.sign() < 0) throw std::invalid_argument("tensor_embed: negative coordinate");
            sum += c;
        }
        if (sum != Rational(1)) throw std::invalid_argument("tensor_embed: slot coordinates must sum to 1");
    }
    std::size_t total = std::size_t{1} << j_size;
    std::vector<Rational> out(total, Rational(1));
    for (std::size_t code = 0; code < total; ++code)
        for (std::size_t m = 0; m < index.slots.size(); ++m)
            out[code] *= t[m][slot_digit(index.slots[m], code, j_size)];
    return out;
}

std::vector<std::size_t> LnInstance::slot_face_support(std::size_t slot, std::uint32_t face_mask) const {
    std::vector<std::size_t> ids;
    for (std::size_t code = 0; code < witness_count(); ++code)
        if (face_mask & (1u << slot_digit(index.slots[slot], code, j.size()))) ids.push_back(code);
    return ids;
}

Rational subshift_diameter(const SubshiftSpec& spec) {
    spec.validate();
    int realizable = 0;
    for (int a = 0; a < spec.alphabet_size; ++a) {
        try {
            Cylinder ca{static_cast<Symbol>(a)}, cb{static_cast<Symbol>(a == 0 ? 1 : 0)};
            realize_witness(spec, {Element{0, 0}}, {static_cast<Symbol>(0)}, ca, cb);
            ++realizable;
        } catch (const WitnessBlocked&) {
        }
    }
    if (realizable >= 2) return Rational(1);
    throw std::runtime_error("subshift_diameter: fewer than two symbols occur at the identity");
}

LnInstance build_ln_instance(const SubshiftSpec& spec, const TilingScheme& scheme,
                             std::size_t portion, std::size_t n, const std::vector<Element>& j,
                             const Cylinder& u0, const Cylinder& u1, std::size_t max_j) {
    spec.validate();
    if (j.empty()) throw std::invalid_argument("build_ln_instance: empty J");
    if (j.size() > max_j)
        throw std::length_error("build_ln_instance: |J| exceeds the instance cap (2^|J| growth)");
    if (!std::is_sorted(j.begin(), j.end())) throw std::invalid_argument("build_ln_instance: J not sorted");

    LnInstance inst;
    inst.shift = spec;
    inst.group = GroupContext(scheme.family);
    inst.f_n = scheme.folner.set(n);
    inst.j = j;
    for (const Element& g : j)
        if (!inst.f_n.contains(g)) throw std::invalid_argument("build_ln_instance: J not inside F_n");

    std::vector<Tile> tiles = tile_decompose(scheme, n, portion);
    std::vector<std::vector<Element>> blocks = restrict_tiling(j, tiles);
    for (std::size_t ti = 0; ti < tiles.size(); ++ti) {
        IndexSlot slot;
        slot.tile_index = tiles[ti].k;
        slot.center = tiles[ti].center;
        for (const Element& g : blocks[ti]) {
            auto it = std::lower_bound(j.begin(), j.end(), g);
            slot.positions.push_back(static_cast<std::size_t>(it - j.begin()));
        }
        inst.index.slots.push_back(std::move(slot));
    }
    inst.index.validate(j.size());

    std::size_t total = std::size_t{1} << j.size();
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Symbol> zeta(j.size());
        for (std::size_t i = 0; i < j.size(); ++i)
            zeta[i] = static_cast<Symbol>((code >> (j.size() - 1 - i)) & 1u);
        inst.witnesses.push_back(realize_witness(spec, j, zeta, u0, u1));
    }

    inst.metric.labels.resize(total);
    inst.metric.dist.assign(total, std::vector<Rational>(total, Rational(0)));
    for (std::size_t a = 0; a < total; ++a) {
        std::string label = "x_";
        for (std::size_t i = 0; i < j.size(); ++i)
            label += static_cast<char>('0' + ((a >> (j.size() - 1 - i)) & 1u));
        inst.metric.labels[a] = label;
        for (std::size_t b = a + 1; b < total; ++b) {
            Rational d = shift_distance_exact(inst.witnesses[a], inst.witnesses[b], inst.group);
            inst.metric.dist[a][b] = d;
            inst.metric.dist[b][a] = d;
        }
    }
    inst.metric.validate();

    inst.action.acting = inst.f_n.elements();
    for (const Element& g : inst.action.acting) {
        std::vector<std::size_t> image(total);
        std::vector<Configuration> shifted;
        shifted.reserve(total);
        for (std::size_t a = 0; a < total; ++a) {
            image[a] = a;
            shifted.push_back(inst.witnesses[a].shifted(g));
        }
        FiniteMetric gm;
        gm.dist.assign(total, std::vector<Rational>(total, Rational(0)));
        for (std::size_t a = 0; a < total; ++a)
            for (std::size_t b = a + 1; b < total; ++b) {
                Rational d = shift_distance_exact(shifted[a], shifted[b], inst.group);
                gm.dist[a][b] = d;
                gm.dist[b][a] = d;
            }
        gm.validate();
        inst.action.image.push_back(std::move(image));
        inst.action.image_metric.push_back(std::move(gm));
    }

    inst.delta = Rational(static_cast<long long>(j.size()), static_cast<long long>(inst.f_n.size()));
    inst.diam = subshift_diameter(spec);
    auto [k_lo, k_hi] = scheme.folner.portion_range(portion);
    std::vector<FiniteSubset> portion_sets;
    std::vector<std::size_t> portion_sizes;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        portion_sets.push_back(scheme.folner.set(k));
        portion_sizes.push_back(scheme.folner.set(k).size());
    }
    inst.gamma = orbit_separation_margin(inst.group, portion_sets, cylinder_distance(u0, u1));
    inst.epsilon = separating_diameter_bound(inst.gamma, inst.diam, portion_sizes);
    return inst;
}

DiscreteMeasure measure_embed(const LnInstance& instance,
                              const std::vector<std::vector<Rational>>& t) {
    std::vector<Rational> coords = tensor_embed(instance.index, instance.j.size(), t);
    std::map<std::size_t, Rational> w;
    for (std::size_t code = 0; code < coords.size(); ++code)
        if (!coords[code].is_zero()) w.emplace(code, coords[code]);
    DiscreteMeasure m(std::move(w));
    m.validate();
    return m;
}

MeasureDecomposition decompose_measure(const LnInstance& instance,
                                       const std::vector<std::vector<Rational>>& t,
                                       std::size_t slot, std::uint32_t face_mask) {
    if (slot >= instance.index.slots.size()) throw std::out_of_range("decompose_measure: bad slot");
    std::size_t k = instance.index.slots[slot].k();
    std::uint32_t full = k >= 32 ? 0xffffffffu : ((1u << k) - 1u);
    if (face_mask == 0 || face_mask == full || (face_mask & ~full))
        throw std::invalid_argument("decompose_measure: face must be proper and nonempty");

    MeasureDecomposition dec;
    dec.lambda = Rational(0);
    for (std::size_t a = 0; a < k; ++a)
        if (face_mask & (1u << a)) dec.lambda += t[slot][a];

    if (!dec.lambda.is_zero()) {
        auto tf = t;
        for (std::size_t a = 0; a < k; ++a)
            tf[slot][a] = (face_mask & (1u << a)) ? t[slot][a] / dec.lambda : Rational(0);
        dec.face_part = measure_embed(instance, tf);
    }
    Rational rest = Rational(1) - dec.lambda;
    if (!rest.is_zero()) {
        auto to = t;
        for (std::size_t a = 0; a < k; ++a)
            to[slot][a] = (face_mask & (1u << a)) ? Rational(0) : t[slot][a] / rest;
        dec.opposite_part = measure_embed(instance, to);
    }
    return dec;
}

Rational lp_face_distance(const LnInstance& instance, const DiscreteMeasure& mu,
                          const std::vector<std::size_t>& allowed_support) {
    if (allowed_support.empty()) throw std::invalid_argument("lp_face_distance: empty support");
    std::vector<std::size_t> sp = mu.support();
    std::size_t np = sp.size(), nq = allowed_support.size(), ng = instance.action.acting.size();

    // variables: z, nu_q, then the pi_g(p,q) blocks
    LpProblem lp;
    lp.num_vars = 1 + nq + ng * np * nq;
    lp.objective.assign(lp.num_vars, Rational(0));
    lp.objective[0] = Rational(1);
    auto nu_var = [&](std::size_t q) { return 1 + q; };
    auto pi_var = [&](std::size_t g, std::size_t p, std::size_t q) {
        return 1 + nq + g * np * nq + p * nq + q;
    };

    {
        auto& row = lp.add_row(Relation::Equal, Rational(1));
        for (std::size_t q = 0; q < nq; ++q) row.coeffs[nu_var(q)] = Rational(1);
    }
    for (std::size_t g = 0; g < ng; ++g) {
        for (std::size_t p = 0; p < np; ++p) {
            auto& row = lp.add_row(Relation::Equal, mu.weight(sp[p]));
            for (std::size_t q = 0; q < nq; ++q) row.coeffs[pi_var(g, p, q)] = Rational(1);
        }
        for (std::size_t q = 0; q < nq; ++q) {
            auto& row = lp.add_row(Relation::Equal, Rational(0));
            for (std::size_t p = 0; p < np; ++p) row.coeffs[pi_var(g, p, q)] = Rational(1);
            row.coeffs[nu_var(q)] = Rational(-1);
        }
        auto& cost_row = lp.add_row(Relation::LessEq, Rational(0));
        const FiniteMetric& gm = instance.action.image_metric[g];
        const auto& img = instance.action.image[g];
        for (std::size_t p = 0; p < np; ++p)
            for (std::size_t q = 0; q < nq; ++q)
                cost_row.coeffs[pi_var(g, p, q)] = gm.d(img[sp[p]], img[allowed_support[q]]);
        cost_row.coeffs[0] = Rational(-1);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("lp_face_distance: epigraph program not optimal");
    return sol.objective;
}

FaceDistanceCheck face_distance_bounds_check(const LnInstance& instance,
                                             const std::vector<std::vector<Rational>>& t,
                                             std::size_t slot, std::uint32_t face_mask) {
    FaceDistanceCheck res;
    DiscreteMeasure mu = measure_embed(instance, t);
    MeasureDecomposition dec = decompose_measure(instance, t, slot, face_mask);
    res.beta = Rational(1) - dec.lambda;  // mass on the opposite side

    res.ub_bound = res.beta * instance.diam;
    res.ub_applicable = dec.face_part.has_value();
    bool ub_ok = true;
    if (res.ub_applicable) {
        res.ub_value = dynamical_wasserstein(mu, *dec.face_part, instance.action).value;
        ub_ok = res.ub_value <= res.ub_bound;
    }

    res.lb_bound = res.beta * instance.gamma;
    res.lb_value = lp_face_distance(instance, mu, instance.slot_face_support(slot, face_mask));
    bool lb_ok = res.lb_value >= res.lb_bound;

    res.ok = ub_ok && lb_ok;
    return res;
}

FaceFamilyCheck face_family_intersection_check(const LnInstance& instance,
                                               const std::vector<std::vector<Rational>>& t,
                                               std::size_t slot,
                                               const std::vector<std::uint32_t>& face_masks,
                                               const Rational& epsilon) {
    FaceFamilyCheck res;
    if (face_masks.empty()) throw std::invalid_argument("face_family_intersection_check: empty family");
    DiscreteMeasure mu = measure_embed(instance, t);
    std::size_t k = instance.index.slots[slot].k();
    std::uint32_t meet = (1u << k) - 1u;
    for (std::uint32_t m : face_masks) {
        if (__builtin_popcount(m) != static_cast<int>(k) - 1)
            throw std::invalid_argument("face_family_intersection_check: family must be (k-1)-faces");
        meet &= m;
        Rational d = lp_face_distance(instance, mu, instance.slot_face_support(slot, m));
        if (!(d < epsilon)) return res;  // precondition unmet: vacuous
    }
    if (meet == 0) return res;  // empty intersection: vacuous
    res.applicable = true;
    res.value = lp_face_distance(instance, mu, instance.slot_face_support(slot, meet));
    res.bound = instance.diam * Rational(static_cast<long long>(k)) * epsilon / instance.gamma;
    res.ok = res.value <= res.bound;
    return res;
}

TileCountCheck tile_count_estimate_check(
    std::size_t f_n_size, std::size_t j_size, const Rational& delta,
    const std::vector<std::pair<std::size_t, std::size_t>>& tile_size_and_dense_count) {
    if (delta.sign() <= 0) throw std::invalid_argument("tile_count_estimate_check: delta must be > 0");
    // |J| >= delta |F_n|: the estimate only needs the non-strict inequality,
    // and the run's certified density delta = |J|/|F_n| sits exactly on it.
    if (Rational(static_cast<long long>(j_size)) < delta * Rational(static_cast<long long>(f_n_size)))
        throw std::invalid_argument("tile_count_estimate_check: witness below the declared density");
    TileCountCheck res;
    res.lhs = Rational(static_cast<long long>(f_n_size));
    Rational sum(0);
    for (const auto& [size, dense] : tile_size_and_dense_count)
        sum += Rational(static_cast<long long>(size)) * Rational(static_cast<long long>(dense));
    res.rhs = Rational(2) / delta * sum;
    res.ok = res.lhs <= res.rhs;
    return res;
}

namespace {

BigInt pow2_floor_half_delta(const Rational& delta, std::size_t tile_size) {
    BigInt e = (delta / Rational(2) * Rational(static_cast<long long>(tile_size))).floor();
    if (e.sign() < 0) throw std::logic_error("dim bound: negative exponent");
    return BigInt::pow2(static_cast<unsigned>(e.to_int64()));
}

}  // namespace

BigInt dim_lower_bound(const Rational& delta,
                       const std::vector<std::pair<std::size_t, std::size_t>>& tile_size_and_dense_count) {
    BigInt total(0);
    for (const auto& [size, dense] : tile_size_and_dense_count)
        total += pow2_floor_half_delta(delta, size) * BigInt(static_cast<long long>(dense));
    return total;
}

Rational mdim_lower_bound(const Rational& delta, const std::vector<std::size_t>& portion_tile_sizes) {
    if (portion_tile_sizes.empty()) throw std::invalid_argument("mdim_lower_bound: empty portion");
    bool first = true;
    Rational best;
    for (std::size_t s : portion_tile_sizes) {
        Rational v = Rational(pow2_floor_half_delta(delta, s)) / Rational(static_cast<long long>(s));
        if (first || v < best) best = v;
        first = false;
    }
    return delta / Rational(2) * best;
}

BallProbeReport ball_cover_separating_probe(const LnInstance& instance,
                                            const std::vector<std::vector<std::vector<Rational>>>& samples,
                                            const std::vector<std::vector<std::size_t>>& balls) {
    BallProbeReport rep;
    rep.max_ball_diameter = Rational(0);

    std::vector<DiscreteMeasure> embedded;
    embedded.reserve(samples.size());
    for (const auto& t : samples) embedded.push_back(measure_embed(instance, t));

    for (const auto& ball : balls)
        for (std::size_t a = 0; a < ball.size(); ++a)
            for (std::size_t b = a + 1; b < ball.size(); ++b) {
                Rational d =
                    dynamical_wasserstein(embedded[ball[a]], embedded[ball[b]], instance.action).value;
                rep.max_ball_diameter = max(rep.max_ball_diameter, d);
            }

    // A sample lies in a face's image exactly when its slot coordinates are
    // supported inside the face mask.
    auto sample_in_face = [&](std::size_t s, std::size_t slot, std::uint32_t mask) {
        Rational sum(0);
        for (std::size_t a = 0; a < samples[s][slot].size(); ++a)
            if (mask & (1u << a)) sum += samples[s][slot][a];
        return sum == Rational(1);
    };

    for (std::size_t slot = 0; slot < instance.index.slots.size(); ++slot) {
        std::size_t k = instance.index.slots[slot].k();
        if (k < 2) continue;
        std::uint32_t full = (1u << k) - 1u;
        // per ball: incident (k-1)-faces
        std::vector<std::vector<std::uint32_t>> incident(balls.size());
        for (std::size_t b = 0; b < balls.size(); ++b)
            for (std::size_t jj = 0; jj < k; ++jj) {
                std::uint32_t face = full & ~(1u << jj);
                for (std::size_t s : balls[b])
                    if (sample_in_face(s, slot, face)) {
                        incident[b].push_back(face);
                        break;
                    }
            }
        std::vector<std::size_t> candidates;
        for (std::size_t b = 0; b < balls.size(); ++b)
            if (!incident[b].empty()) candidates.push_back(b);
        if (candidates.size() > 20)
            throw std::length_error("ball_cover_separating_probe: too many balls to enumerate");
        for (std::size_t sub = 1; sub < (std::size_t{1} << candidates.size()); ++sub) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (sub & (std::size_t{1} << i)) members.push_back(candidates[i]);
            // samples common to every member ball
            std::vector<std::size_t> common = balls[members[0]];
            std::sort(common.begin(), common.end());
            for (std::size_t i = 1; i < members.size(); ++i) {
                std::vector<std::size_t> other = balls[members[i]];
                std::sort(other.begin(), other.end());
                std::vector<std::size_t> merged;
                std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                                      std::back_inserter(merged));
                common = std::move(merged);
            }
            if (common.empty()) continue;
            // face assignments, mixed radix over each member's incident faces
            std::vector<std::size_t> pick(members.size(), 0);
            bool more = true;
            while (more) {
                std::uint32_t meet = full;
                for (std::size_t i = 0; i < members.size(); ++i) meet &= incident[members[i]][pick[i]];
                if (meet != 0) {
                    std::uint32_t opposite = full & ~meet;
                    for (std::size_t s : common)
                        if (sample_in_face(s, slot, opposite)) {
                            BallProbeViolation v;
                            v.slot = slot;
                            v.balls = members;
                            for (std::size_t i = 0; i < members.size(); ++i)
                                v.face_masks.push_back(incident[members[i]][pick[i]]);
                            v.sample = s;
                            rep.violations.push_back(std::move(v));
                            break;
                        }
                }
                more = false;
                for (std::size_t f = pick.size(); f-- > 0;) {
                    if (++pick[f] < incident[members[f]].size()) {
                        more = true;
                        break;
                    }
                    pick[f] = 0;
                }
            }
        }
    }
    return rep;
}

BoundRow compute_bound_row(const SubshiftSpec& spec, const TilingScheme& scheme, std::size_t portion,
                           std::size_t n, const std::vector<Element>& j, const Rational& delta) {
    BoundRow row;
    row.portion = portion;
    row.n = n;
    row.f_n_size = scheme.folner.set(n).size();
    row.j_size = j.size();
    row.delta = delta;

    std::vector<Tile> tiles = tile_decompose(scheme, n, portion);
    std::vector<std::vector<Element>> blocks = restrict_tiling(j, tiles);
    std::vector<std::size_t> tile_sizes;
    for (const Tile& t : tiles) tile_sizes.push_back(t.cells.size());
    std::vector<std::size_t> dense = select_dense_tiles(blocks, delta, tile_sizes);
    row.tile_count = tiles.size();
    row.dense_tile_count = dense.size();

    GroupContext ctx(scheme.family);
    auto [k_lo, k_hi] = scheme.folner.portion_range(portion);
    std::vector<FiniteSubset> portion_sets;
    std::vector<std::size_t> portion_sizes;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        portion_sets.push_back(scheme.folner.set(k));
        portion_sizes.push_back(scheme.folner.set(k).size());
    }
    Rational diam = subshift_diameter(spec);
    row.gamma = orbit_separation_margin(ctx, portion_sets, Rational(1));
    row.epsilon = separating_diameter_bound(row.gamma, diam, portion_sizes);

    // aggregate dense counts per tile shape
    std::map<std::size_t, std::size_t> dense_by_shape;
    for (std::size_t d : dense) dense_by_shape[tiles[d].k] += 1;
    std::vector<std::pair<std::size_t, std::size_t>> shape_counts;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        auto it = dense_by_shape.find(k);
        shape_counts.emplace_back(scheme.folner.set(k).size(),
                                  it == dense_by_shape.end() ? 0 : it->second);
    }
    row.dim_bound = dim_lower_bound(delta, shape_counts);
    row.mdim_bound = mdim_lower_bound(delta, portion_sizes);
    return row;
}

}  // namespace meandim
