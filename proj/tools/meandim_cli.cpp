// Batch front end: builds tilings, tabulates Folner diagnostics, searches
// independence sets, runs exact transport, probes separating covers and
// evaluates the dimension-bound pipeline. Outputs are deterministic for a
// fixed config and seed.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "meandim/bound.hpp"
#include "meandim/cover.hpp"
#include "meandim/independence.hpp"
#include "meandim/io.hpp"

using namespace meandim;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 16;
};

json load_config(const Options& opt) {
    if (opt.config_path.empty()) return json::object();
    try {
        return json::parse(read_file(opt.config_path));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

GroupFamily config_family(const json& cfg) {
    return GroupContext::family_from_name(cfg.value("group", std::string("integer_line")));
}

SubshiftSpec config_subshift(const json& cfg) {
    if (!cfg.contains("subshift")) {
        SubshiftSpec s = SubshiftSpec::full_shift(config_family(cfg), cfg.value("alphabet", 2));
        s.validate();
        return s;
    }
    const json& sub = cfg.at("subshift");
    if (sub.is_string()) {
        std::string name = sub.get<std::string>();
        if (name == "golden_mean") return SubshiftSpec::golden_mean();
        if (name == "full_shift") {
            SubshiftSpec s = SubshiftSpec::full_shift(config_family(cfg), cfg.value("alphabet", 2));
            s.validate();
            return s;
        }
        return subshift_from_json(read_file(name));  // treat as a path
    }
    return subshift_from_json(sub.dump());
}

TilingScheme config_scheme(const json& cfg) {
    if (cfg.contains("tiling_file")) return tiling_from_json(read_file(cfg.at("tiling_file")));
    std::size_t depth = cfg.value("depth", std::size_t{4});
    if (config_family(cfg) == GroupFamily::IntegerGrid2D) return build_box_tiling_2d(depth);
    return build_dyadic_tiling(depth);
}

std::string out_path(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

std::string element_str(const Element& e, GroupFamily family) {
    if (family == GroupFamily::IntegerLine) return std::to_string(e.x);
    return "(" + std::to_string(e.x) + "," + std::to_string(e.y) + ")";
}

int run_tile(const Options& opt) {
    json cfg = load_config(opt);
    TilingScheme scheme = config_scheme(cfg);
    TilingCheck check = verify_tiling(scheme);
    write_file_atomic(out_path(opt, "tiling.json"), tiling_to_json(scheme));
    if (check.ok) {
        std::cout << "tiling ok: depth " << scheme.folner.depth() << ", "
                  << scheme.centers.size() << " center sets verified\n";
        return kExitOk;
    }
    std::cout << "tiling violation at n=" << check.violation->n << " ("
              << (check.violation->overlap ? "overlap" : "gap") << "):";
    for (const Element& e : check.violation->elements)
        std::cout << " " << element_str(e, scheme.family);
    std::cout << "\n";
    return kExitCheckFailed;
}

int run_folner(const Options& opt) {
    json cfg = load_config(opt);
    TilingScheme scheme = config_scheme(cfg);
    GroupContext ctx(scheme.family);
    SubshiftSpec shift = config_subshift(cfg);
    Rational m = Rational::from_string(cfg.value("tempered_m", std::string("2")));

    CsvWriter defects;
    defects.row({"n", "set_size", "generator", "defect"});
    for (std::size_t n = 1; n <= scheme.folner.depth(); ++n)
        for (const Element& g : ctx.generators())
            defects.row({std::to_string(n), std::to_string(scheme.folner.set(n).size()),
                         element_str(g, scheme.family),
                         folner_defect(scheme.folner.set(n), g, ctx).to_string()});
    write_file_atomic(out_path(opt, "folner_defect.csv"), defects.text());

    // the Shulman check multiplies set sizes pairwise; cap the prefix it scans
    std::size_t prefix_len = scheme.folner.depth();
    {
        std::size_t work = 0;
        for (std::size_t n = 0; n + 1 < scheme.folner.depth(); ++n) {
            for (std::size_t k = 0; k <= n; ++k)
                work += scheme.folner.sets[k].size() * scheme.folner.sets[n + 1].size();
            if (work > 20000000) {
                prefix_len = n + 1;
                break;
            }
        }
    }
    std::vector<FiniteSubset> prefix(scheme.folner.sets.begin(),
                                     scheme.folner.sets.begin() + static_cast<std::ptrdiff_t>(prefix_len));
    TemperedResult tempered = is_tempered(prefix, m, ctx);
    CsvWriter tcsv;
    tcsv.row({"m", "tempered", "worst_ratio", "prefix_length"});
    tcsv.row({m.to_string(), tempered.tempered ? "true" : "false", tempered.worst_ratio.to_string(),
              std::to_string(prefix_len)});
    write_file_atomic(out_path(opt, "tempered.csv"), tcsv.text());

    auto f = [&](const FiniteSubset& s) { return Rational::from_double(log2_pattern_count(shift, s)); };
    std::vector<Rational> quotients = ow_limit(f, scheme.folner.sets);
    CsvWriter qcsv;
    qcsv.row({"n", "set_size", "quotient"});
    for (std::size_t n = 1; n <= quotients.size(); ++n)
        qcsv.row({std::to_string(n), std::to_string(scheme.folner.set(n).size()),
                  std::to_string(quotients[n - 1].to_double())});
    write_file_atomic(out_path(opt, "ow_quotients.csv"), qcsv.text());

    std::cout << "defect table over " << scheme.folner.depth() << " sets; tempered(M=" << m.to_string()
              << ") = " << (tempered.tempered ? "true" : "false")
              << ", worst ratio " << tempered.worst_ratio.to_string() << "\n"
              << "growth quotient at n=" << quotients.size() << ": "
              << quotients.back().to_double() << "\n";
    return tempered.tempered ? kExitOk : kExitCheckFailed;
}

int run_independence(const Options& opt) {
    json cfg = load_config(opt);
    SubshiftSpec shift = config_subshift(cfg);
    std::size_t max_n = cfg.value("max_n", std::size_t{12});
    IndependenceBudget budget;
    budget.certification_cap = opt.budget;

    CsvWriter csv;
    csv.row({"n", "f_size", "j_size", "delta", "certified", "exhaustive", "j"});
    Rational running_min;
    bool first = true;
    bool all_ok = true;
    for (std::size_t n = 1; n <= max_n; ++n) {
        FiniteSubset f = shift.family == GroupFamily::IntegerLine
                             ? FiniteSubset::interval(0, static_cast<std::int64_t>(n) - 1)
                             : FiniteSubset::box(0, static_cast<std::int64_t>(n) - 1, 0,
                                                 static_cast<std::int64_t>(n) - 1);
        try {
            IndependenceResult r = find_independence_set(shift, Cylinder{0}, Cylinder{1}, f, budget);
            std::string j_str;
            for (std::size_t i = 0; i < r.j.size(); ++i) {
                if (i) j_str += " ";
                j_str += element_str(r.j[i], shift.family);
            }
            csv.row({std::to_string(n), std::to_string(f.size()), std::to_string(r.j.size()),
                     r.delta.to_string(), r.certified ? "true" : "false",
                     r.exhaustive ? "true" : "false", j_str});
            running_min = first ? r.delta : min(running_min, r.delta);
            first = false;
        } catch (const std::exception& e) {
            csv.row({std::to_string(n), std::to_string(f.size()), "0", "0", "false", "false",
                     std::string("error: ") + e.what()});
            all_ok = false;
        }
    }
    write_file_atomic(out_path(opt, "independence.csv"), csv.text());
    if (!first)
        std::cout << "independence table up to n=" << max_n << "; running min delta = "
                  << running_min.to_string() << "\n";
    return all_ok ? kExitOk : kExitCheckFailed;
}

int run_transport(const Options& opt) {
    json cfg = load_config(opt);
    TransportInstance inst;
    if (cfg.contains("transport_file")) {
        inst = transport_instance_from_json(read_file(cfg.at("transport_file")));
    } else if (cfg.contains("points")) {
        inst = transport_instance_from_json(cfg.dump());
    } else {
        std::cerr << "transport: config needs a transport_file or an inline instance\n";
        return kExitConfigError;
    }
    TransportResult primal = wasserstein1(inst.mu, inst.nu, inst.metric);
    Rational dual = kr_dual(inst.mu, inst.nu, inst.metric);
    std::cout << "W1 primal = " << primal.value.to_string() << "\n";
    std::cout << "W1 dual   = " << dual.to_string() << "\n";

    json doc;
    doc["primal"] = primal.value.to_string();
    doc["dual"] = dual.to_string();
    doc["duality_gap_zero"] = primal.value == dual;
    if (!inst.action.empty()) {
        // named point maps act isometrically on the table
        ActionTable table;
        for (const auto& [name, map] : inst.action) {
            table.acting.push_back({static_cast<std::int64_t>(table.acting.size()), 0});
            table.image.push_back(map);
            table.image_metric.push_back(inst.metric);
        }
        DynamicalTransportResult wf = dynamical_wasserstein(inst.mu, inst.nu, table);
        doc["dynamical"] = wf.value.to_string();
        doc["dynamical_argmax"] = inst.action[static_cast<std::size_t>(wf.argmax.x)].first;
        std::cout << "W_F       = " << wf.value.to_string() << " (at "
                  << inst.action[static_cast<std::size_t>(wf.argmax.x)].first << ")\n";
    }
    json plan = json::array();
    for (const auto& [p, q, mass] : primal.plan.moves) {
        json move;
        move["from"] = inst.metric.labels.empty() ? std::to_string(p) : inst.metric.labels[p];
        move["to"] = inst.metric.labels.empty() ? std::to_string(q) : inst.metric.labels[q];
        move["mass"] = mass.to_string();
        plan.push_back(std::move(move));
    }
    doc["plan"] = std::move(plan);
    write_file_atomic(out_path(opt, "transport.json"), doc.dump(2) + "\n");
    return primal.value == dual ? kExitOk : kExitCheckFailed;
}

ProductPoint random_boundary_point(const ProductSpec& spec, Prng& rng) {
    ProductPoint p;
    for (int k : spec.k) p.coords.push_back(rng.simplex_point(static_cast<std::size_t>(k)));
    // send one random coordinate of one random factor to zero, renormalizing
    std::size_t f = rng.below(spec.factors());
    std::size_t j = rng.below(static_cast<std::size_t>(spec.k[f]));
    Rational rest = Rational(1) - p.coords[f][j];
    for (std::size_t i = 0; i < p.coords[f].size(); ++i)
        p.coords[f][i] = i == j ? Rational(0) : p.coords[f][i] / rest;
    return p;
}

int run_lebesgue(const Options& opt) {
    json cfg = load_config(opt);
    ProductSpec spec;
    spec.k = cfg.value("simplexes", std::vector<int>{2, 2});
    spec.validate();
    CoverSearchBudget budget;
    budget.max_elements = cfg.value("max_elements", std::size_t{6});
    budget.resolution = cfg.value("resolution", 3);

    MinSeparatingResult r = min_separating_order(spec, budget);
    json doc;
    doc["simplexes"] = spec.k;
    doc["resolution"] = budget.resolution;
    doc["max_elements"] = budget.max_elements;
    doc["found"] = r.found;
    doc["dim_bound"] = r.dim_bound;
    doc["strong_bound"] = r.strong_bound;
    bool ok = r.found;
    if (r.found) {
        doc["min_order"] = r.min_order;
        doc["strong_bound_met"] = r.strong_bound_met;
        json els = json::array();
        for (const auto& e : r.witness.elements) els.push_back(e.cells);
        doc["witness_cells"] = std::move(els);

        std::size_t samples = cfg.value("samples", std::size_t{1000});
        Prng rng(opt.seed);
        std::vector<ProductPoint> pts;
        pts.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) pts.push_back(random_boundary_point(spec, rng));
        BoundaryCheckReport rep = boundary_displacement_check(r.witness, pts);
        doc["boundary_samples"] = rep.samples;
        doc["boundary_violations"] = rep.violations.size();
        ok = ok && rep.ok() && r.min_order >= r.dim_bound;
        std::cout << "min separating order = " << r.min_order << " (dim bound " << r.dim_bound
                  << ", strong bound " << r.strong_bound
                  << (r.strong_bound_met ? " met" : " not met") << ")\n"
                  << "boundary displacement: " << rep.samples << " samples, "
                  << rep.violations.size() << " violations\n";
    } else {
        std::cout << "no separating cover found within the budget\n";
    }
    write_file_atomic(out_path(opt, "lebesgue.json"), doc.dump(2) + "\n");
    return ok ? kExitOk : kExitCheckFailed;
}

int run_bound(const Options& opt) {
    json cfg = load_config(opt);
    SubshiftSpec shift = config_subshift(cfg);
    std::size_t depth = cfg.value("depth", std::size_t{17});
    TilingScheme scheme = config_scheme(json{{"group", GroupContext(shift.family).family_name()},
                                             {"depth", depth}});
    IndependenceBudget wbudget;
    wbudget.certification_cap = opt.budget;

    CsvWriter csv;
    csv.row({"portion", "n", "f_n", "j_n", "delta", "gamma", "epsilon", "tiles", "dense_tiles",
             "dim_lower_bound", "mdim_lower_bound"});
    std::vector<BoundRow> rows;
    for (std::size_t p = 1; p + 1 <= depth; ++p) {
        std::size_t n = p + 1;
        std::vector<Element> j;
        Rational delta;
        if (shift.is_full_shift()) {
            j = scheme.folner.set(n).elements();
            delta = Rational(1);
        } else {
            if (scheme.folner.set(n).size() > 16) continue;  // witness certification cap
            IndependenceResult r =
                find_independence_set(shift, Cylinder{0}, Cylinder{1}, scheme.folner.set(n), wbudget);
            if (!r.certified) continue;
            j = r.j;
            delta = r.delta;
        }
        BoundRow row = compute_bound_row(shift, scheme, p, n, j, delta);
        csv.row({std::to_string(row.portion), std::to_string(row.n), std::to_string(row.f_n_size),
                 std::to_string(row.j_size), row.delta.to_string(), row.gamma.to_string(),
                 row.epsilon.to_string(), std::to_string(row.tile_count),
                 std::to_string(row.dense_tile_count), row.dim_bound.to_string(),
                 row.mdim_bound.to_string()});
        rows.push_back(std::move(row));
    }
    write_file_atomic(out_path(opt, "bound.csv"), csv.text());

    json doc;
    doc["rows"] = rows.size();
    if (!rows.empty()) {
        doc["final_mdim_lower_bound"] = rows.back().mdim_bound.to_string();
        // first portions whose bound clears 10 and 100
        json crossings;
        for (long long threshold : {10, 100}) {
            std::size_t at = 0;
            for (const BoundRow& r : rows)
                if (r.mdim_bound > Rational(threshold)) {
                    at = r.portion;
                    break;
                }
            crossings[std::to_string(threshold)] = at;  // 0: never crossed
        }
        doc["mdim_bound_exceeds"] = std::move(crossings);
    }
    write_file_atomic(out_path(opt, "bound_summary.json"), doc.dump(2) + "\n");
    std::cout << "bound report: " << rows.size() << " rows";
    if (!rows.empty())
        std::cout << "; last mdim lower bound has "
                  << rows.back().mdim_bound.num().to_string().size() << " digits";
    std::cout << "\n";
    return kExitOk;
}

int run_check(const Options& opt) {
    json cfg = load_config(opt);
    SubshiftSpec shift = config_subshift(cfg);
    std::size_t depth = cfg.value("depth", std::size_t{2});
    std::size_t portion = cfg.value("portion", std::size_t{1});
    std::size_t n = cfg.value("n", portion + 1);
    std::size_t max_j = cfg.value("max_j", std::size_t{4});
    std::size_t samples = cfg.value("samples", std::size_t{4});
    TilingScheme scheme = config_scheme(json{{"group", GroupContext(shift.family).family_name()},
                                             {"depth", depth}});

    std::vector<Element> j;
    Rational delta;
    if (shift.is_full_shift()) {
        j = scheme.folner.set(n).elements();
        delta = Rational(1);
    } else {
        IndependenceBudget wbudget;
        wbudget.certification_cap = opt.budget;
        IndependenceResult r =
            find_independence_set(shift, Cylinder{0}, Cylinder{1}, scheme.folner.set(n), wbudget);
        j = r.j;
        delta = r.delta;
    }
    LnInstance inst = build_ln_instance(shift, scheme, portion, n, j, Cylinder{0}, Cylinder{1}, max_j);

    json doc;
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        doc[name] = ok;
        all_ok = all_ok && ok;
    };

    // partition identity: slot bit widths sum to |J|
    std::size_t bits = 0;
    for (const auto& slot : inst.index.slots) bits += slot.positions.size();
    report("partition_identity", bits == inst.j.size());

    Prng rng(opt.seed);
    auto sample_dense = [&]() {
        std::vector<std::vector<Rational>> t;
        for (const auto& slot : inst.index.slots) t.push_back(rng.simplex_point(slot.k()));
        return t;
    };
    // sparse slot coordinates keep the per-face LPs small
    auto sample_t = [&]() {
        std::vector<std::vector<Rational>> t;
        for (const auto& slot : inst.index.slots) {
            std::size_t k = slot.k();
            t.push_back(rng.sparse_simplex_point(k, 1 + rng.below(std::min<std::size_t>(k, 2))));
        }
        return t;
    };

    bool affine_ok = true;
    for (std::size_t it = 0; it < samples; ++it) {
        auto base = sample_dense();
        for (std::size_t slot = 0; slot < inst.index.slots.size(); ++slot) {
            auto other = base;
            other[slot] = rng.simplex_point(inst.index.slots[slot].k());
            Rational lam = rng.unit_rational(16);
            auto mixed = base;
            for (std::size_t a = 0; a < mixed[slot].size(); ++a)
                mixed[slot][a] = lam * base[slot][a] + (Rational(1) - lam) * other[slot][a];
            auto va = tensor_embed(inst.index, inst.j.size(), base);
            auto vb = tensor_embed(inst.index, inst.j.size(), other);
            auto vm = tensor_embed(inst.index, inst.j.size(), mixed);
            for (std::size_t c = 0; c < vm.size(); ++c)
                affine_ok = affine_ok && vm[c] == lam * va[c] + (Rational(1) - lam) * vb[c];
        }
    }
    report("embedding_slotwise_affine", affine_ok);

    bool decomp_ok = true, face_ok = true, family_ok = true;
    for (std::size_t it = 0; it < samples; ++it) {
        auto t = sample_t();
        auto dense = sample_dense();
        DiscreteMeasure mu = measure_embed(inst, dense);
        for (std::size_t slot = 0; slot < inst.index.slots.size(); ++slot) {
            std::size_t k = inst.index.slots[slot].k();
            if (k < 2) continue;
            std::uint32_t full = (1u << k) - 1u;
            for (std::size_t miss = 0; miss < k; ++miss) {
                std::uint32_t mask = full & ~(1u << miss);
                // reconstruction on a dense sample (no LP involved)
                MeasureDecomposition dec = decompose_measure(inst, dense, slot, mask);
                for (std::size_t c = 0; c < inst.witness_count(); ++c) {
                    Rational rhs(0);
                    if (dec.face_part) rhs += dec.lambda * dec.face_part->weight(c);
                    if (dec.opposite_part) rhs += (Rational(1) - dec.lambda) * dec.opposite_part->weight(c);
                    decomp_ok = decomp_ok && mu.weight(c) == rhs;
                }
                // LP-backed bounds on the sparse sample
                face_ok = face_ok && face_distance_bounds_check(inst, t, slot, mask).ok;
                FaceFamilyCheck fam = face_family_intersection_check(inst, t, slot, {mask}, inst.epsilon);
                family_ok = family_ok && fam.ok;
            }
        }
    }
    // one dense measure through the first face of each slot
    {
        auto dense = sample_dense();
        for (std::size_t slot = 0; slot < inst.index.slots.size(); ++slot) {
            std::size_t k = inst.index.slots[slot].k();
            if (k < 2) continue;
            std::uint32_t full = (1u << k) - 1u;
            face_ok = face_ok && face_distance_bounds_check(inst, dense, slot, full & ~1u).ok;
        }
    }
    report("measure_decomposition_reconstructs", decomp_ok);
    report("face_distance_bounds", face_ok);
    report("face_family_intersection", family_ok);

    std::vector<Tile> tiles = tile_decompose(scheme, n, portion);
    std::vector<std::vector<Element>> blocks = restrict_tiling(inst.j, tiles);
    std::vector<std::size_t> tile_sizes;
    for (const Tile& t : tiles) tile_sizes.push_back(t.cells.size());
    std::vector<std::size_t> dense = select_dense_tiles(blocks, delta, tile_sizes);
    std::vector<std::pair<std::size_t, std::size_t>> shape_counts;
    for (std::size_t d : dense) shape_counts.emplace_back(tile_sizes[d], 1);
    TileCountCheck tc = tile_count_estimate_check(inst.f_n.size(), inst.j.size(), delta, shape_counts);
    report("tile_count_estimate", tc.ok);

    // ball probe: singleton balls around sampled points pass at sample level
    std::vector<std::vector<std::vector<Rational>>> pts;
    std::vector<std::vector<std::size_t>> balls;
    for (std::size_t it = 0; it < samples; ++it) {
        pts.push_back(sample_t());
        balls.push_back({it});
    }
    BallProbeReport probe = ball_cover_separating_probe(inst, pts, balls);
    report("ball_cover_probe", probe.ok());

    write_file_atomic(out_path(opt, "check.json"), doc.dump(2) + "\n");
    return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-dimension laboratory"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config path");
        sub->add_option("--seed", opt.seed, "PRNG seed governing all sampling");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--budget", opt.budget, "certification budget (assignments)");
    };
    add_common(app.add_subcommand("tile", "build or load a tiling scheme and verify it"));
    add_common(app.add_subcommand("folner", "defect, temperedness and growth-quotient tables"));
    add_common(app.add_subcommand("independence", "independence-set search and delta table"));
    add_common(app.add_subcommand("transport", "exact W1 primal and dual on a measure file"));
    add_common(app.add_subcommand("lebesgue", "minimal separating order and boundary report"));
    add_common(app.add_subcommand("bound", "dimension-bound pipeline report"));
    add_common(app.add_subcommand("check", "all instance-level checks on one instance"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("tile")) return run_tile(opt);
        if (app.got_subcommand("folner")) return run_folner(opt);
        if (app.got_subcommand("independence")) return run_independence(opt);
        if (app.got_subcommand("transport")) return run_transport(opt);
        if (app.got_subcommand("lebesgue")) return run_lebesgue(opt);
        if (app.got_subcommand("bound")) return run_bound(opt);
        if (app.got_subcommand("check")) return run_check(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitConfigError;
}
