// Copyright 2026 The hcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Configuration-driven experiment pipelines. Every runner returns its
// artifacts as strings; identical configs give identical bytes.
//
// Seeding: child(master, a, b) = derive_seed(derive_seed(master, a), b).
// Stream a = 0 builds states, a = 1 draws samples, a = 2 Monte Carlo.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hcut/abelian.hpp"
#include "hcut/heuristics.hpp"
#include "hcut/hcsim.hpp"
#include "hcut/io.hpp"
#include "hcut/state.hpp"

namespace hcut {

struct StateRecipe {
    /// haar | product | mixed | planted | bell
    std::string kind = "haar";
    /// Register sizes for product and mixed; empty means two halves.
    std::vector<unsigned> factors;
    double eps = 0.1;
    double phi = 0.1;
    std::optional<unsigned> control;
    std::optional<unsigned> target;
};

struct SweepSettings {
    std::vector<unsigned> ns{6};
    std::vector<double> phis{0.1, std::numbers::pi};
    unsigned seeds = 6;
};

struct EstimatorSettings {
    /// Empty means the planted half cut.
    std::vector<std::string> masks;
    std::vector<std::size_t> ms{50, 200};
    std::size_t trials = 10000;
    double alpha = 0.01;
};

struct AbelianSettings {
    std::vector<std::vector<unsigned>> groups{{3, 2}, {5, 2, 2}};
    std::size_t mixtures = 100;
    double sparsity = 0.0;
};

struct ExperimentConfig {
    std::string experiment = "purity-scan";
    std::uint64_t seed = 1;
    unsigned n = 4;
    std::vector<unsigned> ts{1};
    StateRecipe state;
    std::size_t shots = kDefaultShotsPerRun;
    std::size_t runs = kDefaultRuns;
    /// 0 selects 2^n / 0.05^2.
    std::size_t repetitions = 0;
    double threshold = kDefaultMergeThreshold;
    double support_threshold = kSupportThreshold;
    SweepSettings sweep;
    EstimatorSettings estimator;
    AbelianSettings abelian;
};

struct Artifact {
    std::string name;
    std::string content;
};

inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return derive_seed(derive_seed(master, stream), index);
}

// --- Config parsing ----------------------------------------------------------

namespace detail {

inline void reject_unknown(const Json &j, std::initializer_list<const char *> allowed, const std::string &where) {
    for (const auto &[key, value] : j.items()) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char *a) {
            return key == a;
        });
        if (!ok) {
            throw ConfigError("unknown config key '" + where + key + "'");
        }
    }
}

template <typename T>
void read_field(const Json &j, const char *key, T &into) {
    if (j.contains(key) && !j.at(key).is_null()) {
        into = j.at(key).get<T>();
    }
}

inline Json optional_to_json(const std::optional<unsigned> &v) {
    return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

inline Json to_json(const ExperimentConfig &c) {
    Json groups = Json::array();
    for (const auto &g : c.abelian.groups) {
        groups.push_back(g);
    }
    return Json{
        {"experiment", c.experiment},
        {"seed", c.seed},
        {"n", c.n},
        {"t", c.ts},
        {"state",
         {{"kind", c.state.kind},
          {"factors", c.state.factors},
          {"eps", c.state.eps},
          {"phi", c.state.phi},
          {"control", detail::optional_to_json(c.state.control)},
          {"target", detail::optional_to_json(c.state.target)}}},
        {"shots", c.shots},
        {"runs", c.runs},
        {"repetitions", c.repetitions},
        {"threshold", c.threshold},
        {"support_threshold", c.support_threshold},
        {"sweep", {{"ns", c.sweep.ns}, {"phis", c.sweep.phis}, {"seeds", c.sweep.seeds}}},
        {"estimator",
         {{"masks", c.estimator.masks},
          {"m", c.estimator.ms},
          {"trials", c.estimator.trials},
          {"alpha", c.estimator.alpha}}},
        {"abelian", {{"groups", groups}, {"mixtures", c.abelian.mixtures}, {"sparsity", c.abelian.sparsity}}}};
}

inline void validate(const ExperimentConfig &c) {
    auto fail = [](const std::string &msg) {
        throw ConfigError(msg);
    };
    if (c.n < 1 || c.n > kDefaultPurityTableCap) {
        fail("n must lie in [1, " + std::to_string(kDefaultPurityTableCap) + "]");
    }
    if (c.ts.empty()) {
        fail("t list must be nonempty");
    }
    for (auto t : c.ts) {
        if (t == 0) {
            fail("every t must be >= 1");
        }
    }
    if (c.shots == 0 || c.runs == 0) {
        fail("shots and runs must be positive");
    }
    if (!(c.threshold >= 0.0 && c.threshold < 1.0)) {
        fail("threshold must lie in [0, 1)");
    }
    if (!(c.support_threshold >= 0.0)) {
        fail("support_threshold must be nonnegative");
    }
    const auto &s = c.state;
    if (s.kind != "haar" && s.kind != "product" && s.kind != "mixed" && s.kind != "planted" && s.kind != "bell") {
        fail("unknown state kind '" + s.kind + "'");
    }
    if (!(s.eps >= 0.0 && s.eps <= 1.0)) {
        fail("state.eps must lie in [0, 1]");
    }
    if (!std::isfinite(s.phi)) {
        fail("state.phi must be finite");
    }
    if (!s.factors.empty()) {
        unsigned total = 0;
        for (auto f : s.factors) {
            if (f == 0) {
                fail("state.factors entries must be positive");
            }
            total += f;
        }
        if (total != c.n) {
            fail("state.factors must sum to n");
        }
    }
    if (s.kind == "bell" && c.n != 2) {
        fail("bell recipe needs n = 2");
    }
    if ((s.kind == "product" || s.kind == "mixed" || s.kind == "planted") && c.n < 2) {
        fail("recipe '" + s.kind + "' needs n >= 2");
    }
    if (c.sweep.ns.empty() || c.sweep.phis.empty() || c.sweep.seeds == 0) {
        fail("sweep needs ns, phis and seeds >= 1");
    }
    for (auto n : c.sweep.ns) {
        if (n < 2 || n > kDefaultPurityTableCap) {
            fail("sweep.ns entries must lie in [2, 12]");
        }
    }
    for (auto phi : c.sweep.phis) {
        if (!std::isfinite(phi)) {
            fail("sweep.phis entries must be finite");
        }
    }
    for (const auto &m : c.estimator.masks) {
        if (m.size() != c.n || m.find_first_not_of("01") != std::string::npos) {
            fail("estimator mask '" + m + "' is not an n-bit string");
        }
    }
    if (c.estimator.ms.empty() || c.estimator.trials == 0) {
        fail("estimator needs m values and trials >= 1");
    }
    for (auto m : c.estimator.ms) {
        if (m == 0) {
            fail("estimator m entries must be positive");
        }
    }
    if (!(c.estimator.alpha > 0.0 && c.estimator.alpha < 1.0)) {
        fail("estimator.alpha must lie in (0, 1)");
    }
    if (c.abelian.groups.empty() || c.abelian.mixtures == 0) {
        fail("abelian needs groups and mixtures >= 1");
    }
    for (const auto &g : c.abelian.groups) {
        try {
            AbelianGroup check(g);
        } catch (const Error &e) {
            fail(std::string("abelian group: ") + e.what());
        }
    }
    if (!(c.abelian.sparsity >= 0.0 && c.abelian.sparsity < 1.0)) {
        fail("abelian.sparsity must lie in [0, 1)");
    }
}

inline ExperimentConfig config_from_json(const Json &j) {
    ExperimentConfig c;
    try {
        if (!j.is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        detail::reject_unknown(
            j,
            {"experiment", "seed", "n", "t", "state", "shots", "runs", "repetitions", "threshold",
             "support_threshold", "sweep", "estimator", "abelian"},
            "");
        detail::read_field(j, "experiment", c.experiment);
        detail::read_field(j, "seed", c.seed);
        detail::read_field(j, "n", c.n);
        if (j.contains("t") && j.at("t").is_number()) {
            c.ts = {j.at("t").get<unsigned>()};
        } else {
            detail::read_field(j, "t", c.ts);
        }
        detail::read_field(j, "shots", c.shots);
        detail::read_field(j, "runs", c.runs);
        detail::read_field(j, "repetitions", c.repetitions);
        detail::read_field(j, "threshold", c.threshold);
        detail::read_field(j, "support_threshold", c.support_threshold);
        if (j.contains("state")) {
            const auto &s = j.at("state");
            detail::reject_unknown(s, {"kind", "factors", "eps", "phi", "control", "target"}, "state.");
            detail::read_field(s, "kind", c.state.kind);
            detail::read_field(s, "factors", c.state.factors);
            detail::read_field(s, "eps", c.state.eps);
            detail::read_field(s, "phi", c.state.phi);
            if (s.contains("control") && !s.at("control").is_null()) {
                c.state.control = s.at("control").get<unsigned>();
            }
            if (s.contains("target") && !s.at("target").is_null()) {
                c.state.target = s.at("target").get<unsigned>();
            }
        }
        if (j.contains("sweep")) {
            const auto &s = j.at("sweep");
            detail::reject_unknown(s, {"ns", "phis", "seeds"}, "sweep.");
            detail::read_field(s, "ns", c.sweep.ns);
            detail::read_field(s, "phis", c.sweep.phis);
            detail::read_field(s, "seeds", c.sweep.seeds);
        }
        if (j.contains("estimator")) {
            const auto &s = j.at("estimator");
            detail::reject_unknown(s, {"masks", "m", "trials", "alpha"}, "estimator.");
            detail::read_field(s, "masks", c.estimator.masks);
            detail::read_field(s, "m", c.estimator.ms);
            detail::read_field(s, "trials", c.estimator.trials);
            detail::read_field(s, "alpha", c.estimator.alpha);
        }
        if (j.contains("abelian")) {
            const auto &s = j.at("abelian");
            detail::reject_unknown(s, {"groups", "mixtures", "sparsity"}, "abelian.");
            detail::read_field(s, "groups", c.abelian.groups);
            detail::read_field(s, "mixtures", c.abelian.mixtures);
            detail::read_field(s, "sparsity", c.abelian.sparsity);
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
    validate(c);
    return c;
}

/// Applies KEY=VALUE with a dotted KEY. VALUE is parsed as JSON when it
/// parses, otherwise taken as a string.
inline void apply_override(Json &doc, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + assignment + "' is not KEY=VALUE");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }
    Json *node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw ConfigError("override key '" + key + "' has an empty segment");
        }
        if (!node->is_object()) {
            if (!node->is_null()) {
                throw ConfigError("override key '" + key + "' descends into a non-object");
            }
            *node = Json::object();
        }
        node = &(*node)[part];
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    *node = std::move(value);
}

// --- State construction --------------------------------------------------------

inline std::vector<unsigned> recipe_factors(const StateRecipe &r, unsigned n) {
    if (!r.factors.empty()) {
        return r.factors;
    }
    return {n / 2, n - n / 2};
}

inline StateVector build_state(const StateRecipe &r, unsigned n, std::uint64_t seed) {
    if (r.kind == "bell") {
        const double a = 1.0 / std::sqrt(2.0);
        return StateVector({a, 0.0, 0.0, a});
    }
    if (r.kind == "haar") {
        return haar_random_state(n, derive_seed(seed, 0));
    }
    if (r.kind == "planted") {
        return planted_cut_state(n, r.phi, seed, r.control, r.target);
    }
    std::vector<StateVector> parts;
    const auto factors = recipe_factors(r, n);
    for (std::size_t i = 0; i < factors.size(); i++) {
        parts.push_back(haar_random_state(factors[i], derive_seed(seed, i)));
    }
    auto product = tensor_product(std::span<const StateVector>(parts));
    if (r.kind == "product") {
        return product;
    }
    return mix_states(product, haar_random_state(n, derive_seed(seed, factors.size())), r.eps);
}

/// Masks with P = 1 that the recipe plants: the factor boundaries.
inline std::vector<Mask> planted_masks(const StateRecipe &r, unsigned n) {
    if (r.kind == "haar" || r.kind == "bell") {
        return {};
    }
    if (r.kind == "planted") {
        return {planted_mask(n)};
    }
    std::vector<Mask> out;
    unsigned start = 0;
    for (auto f : recipe_factors(r, n)) {
        std::vector<unsigned> qubits;
        for (unsigned q = start; q < start + f; q++) {
            qubits.push_back(q);
        }
        out.push_back(Mask::from_qubits(n, qubits));
        start += f;
    }
    return out;
}

// --- Runners -------------------------------------------------------------------

namespace detail {

inline std::string csv_header(const ExperimentConfig &c) {
    return "# config=" + to_json(c).dump() + "\n";
}

inline std::string join(const std::vector<std::string> &cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (i) {
            out += ',';
        }
        out += cells[i];
    }
    out += '\n';
    return out;
}

inline std::string artifact_json(const ExperimentConfig &c, Json body) {
    Json out{{"config", to_json(c)}};
    for (auto &[k, v] : body.items()) {
        out[k] = v;
    }
    return out.dump(2) + "\n";
}

}  // namespace detail

/// One row per mask: P(s) and P^t(s) for every t, with planted masks flagged.
inline std::vector<Artifact> run_purity_scan(const ExperimentConfig &c) {
    validate(c);
    const auto psi = build_state(c.state, c.n, child_seed(c.seed, 0, 0));
    const auto table = purity_table(psi);
    const auto planted = planted_masks(c.state, c.n);

    std::vector<std::string> header{"bitstring", "weight", "purity"};
    for (auto t : c.ts) {
        header.push_back("purity_pow_t" + std::to_string(t));
    }
    header.push_back("planted");
    std::string csv = detail::csv_header(c) + detail::join(header);
    for (std::uint64_t s = 0; s < table.values.size(); s++) {
        const Mask m(c.n, s);
        std::vector<std::string> row{m.str(), std::to_string(m.weight()), format_double(table.values[s])};
        for (auto t : c.ts) {
            row.push_back(format_double(ipow(table.values[s], t)));
        }
        const bool is_planted = std::any_of(planted.begin(), planted.end(), [&](const Mask &p) {
            return p == m || p.complement() == m;
        });
        row.push_back(is_planted ? "1" : "0");
        csv += detail::join(row);
    }
    return {{"purity_scan.csv", csv}};
}

/// p_t(x) per requested t, as CSV columns and a JSON list.
inline std::vector<Artifact> run_distribution_scan(const ExperimentConfig &c) {
    validate(c);
    const auto psi = build_state(c.state, c.n, child_seed(c.seed, 0, 0));
    const auto table = purity_table(psi);
    std::vector<OutcomeDistribution> dists;
    for (auto t : c.ts) {
        dists.push_back(exact_distribution(table, t));
    }

    std::vector<std::string> header{"bitstring"};
    for (auto t : c.ts) {
        header.push_back("p_t" + std::to_string(t));
    }
    std::string csv = detail::csv_header(c) + detail::join(header);
    for (std::uint64_t x = 0; x < table.values.size(); x++) {
        std::vector<std::string> row{Mask(c.n, x).str()};
        for (const auto &d : dists) {
            row.push_back(format_double(d.probs[x]));
        }
        csv += detail::join(row);
    }

    Json list = Json::array();
    for (const auto &d : dists) {
        Json support_strings = Json::array();
        for (const auto &x : support(d, c.support_threshold)) {
            support_strings.push_back(x.str());
        }
        Json entry = to_json(d);
        entry["all_zeros_probability"] = all_zeros_probability(table, d.t);
        entry["entropy_bits"] = entropy_bits(d);
        entry["support"] = std::move(support_strings);
        list.push_back(std::move(entry));
    }
    return {
        {"distribution_scan.csv", csv},
        {"distribution_scan.json", detail::artifact_json(c, Json{{"distributions", std::move(list)}})}};
}

/// Planted cut success probability per (n, phi, t, seed), with mean and
/// standard deviation across seeds and one full heuristic report per (n, phi, t).
inline std::vector<Artifact> run_planted_cut_sweep(const ExperimentConfig &c) {
    validate(c);
    std::string runs_csv = detail::csv_header(c) +
                           detail::join({"n", "phi", "t", "seed_index", "probability", "standard_error", "hits",
                                         "repetitions"});
    std::string summary_csv =
        detail::csv_header(c) + detail::join({"n", "phi", "t", "seeds", "mean", "std", "per_seed"});
    Json reports = Json::array();

    std::uint64_t task = 0;
    for (auto n : c.sweep.ns) {
        for (auto phi : c.sweep.phis) {
            for (auto t : c.ts) {
                PlantedCutQuery q;
                q.n = n;
                q.phi = phi;
                q.t = t;
                q.shots = c.shots;
                q.repetitions = c.repetitions;
                q.control = c.state.control;
                q.target = c.state.target;
                std::vector<double> probs;
                std::string per_seed;
                for (unsigned s = 0; s < c.sweep.seeds; s++) {
                    const auto r = find_planted_cut_probability(
                        q, child_seed(c.seed, 0, s), child_seed(c.seed, 1, task * c.sweep.seeds + s));
                    probs.push_back(r.probability);
                    runs_csv += detail::join(
                        {std::to_string(n), format_double(phi), std::to_string(t), std::to_string(s),
                         format_double(r.probability), format_double(r.standard_error), std::to_string(r.hits),
                         std::to_string(r.repetitions)});
                    per_seed += (s ? ";" : "") + format_double(r.probability);
                }
                double mean = 0.0;
                for (double p : probs) {
                    mean += p;
                }
                mean /= static_cast<double>(probs.size());
                double var = 0.0;
                for (double p : probs) {
                    var += (p - mean) * (p - mean);
                }
                const double sd = std::sqrt(var / static_cast<double>(probs.size()));
                summary_csv += detail::join(
                    {std::to_string(n), format_double(phi), std::to_string(t), std::to_string(c.sweep.seeds),
                     format_double(mean), format_double(sd), per_seed});

                const auto psi = planted_cut_state(n, phi, child_seed(c.seed, 0, 0), q.control, q.target);
                const auto dist = exact_distribution(purity_table(psi), t);
                auto report = run_early_stopping_heuristic(
                    dist, HeuristicParams{c.shots, c.runs, c.threshold}, child_seed(c.seed, 2, task));
                Json entry = to_json(report);
                entry["phi"] = phi;
                entry["planted_mask"] = planted_mask(n).str();
                reports.push_back(std::move(entry));
                task++;
            }
        }
    }
    return {
        {"planted_sweep_runs.csv", runs_csv},
        {"planted_sweep_summary.csv", summary_csv},
        {"planted_sweep_reports.json", detail::artifact_json(c, Json{{"reports", std::move(reports)}})}};
}

/// Estimator statistics per (mask, t, m), plus shot accounting for the
/// hidden cut path against the swap test path.
inline std::vector<Artifact> run_estimator_demo(const ExperimentConfig &c) {
    validate(c);
    const auto psi = build_state(c.state, c.n, child_seed(c.seed, 0, 0));
    const auto table = purity_table(psi);
    std::vector<Mask> masks;
    for (const auto &m : c.estimator.masks) {
        masks.push_back(Mask::from_string(m));
    }
    if (masks.empty()) {
        masks.push_back(planted_mask(c.n));
    }

    std::string csv = detail::csv_header(c) +
                      detail::join({"mask", "t", "m", "purity", "true_pt", "estimate", "analytic_mean",
                                    "analytic_variance", "analytic_snr", "mc_mean", "mc_variance", "swap_mean",
                                    "swap_variance", "ks_statistic", "ks_critical", "ks_equivalent"});
    Json networks = Json::array();
    auto moments = [](const std::vector<double> &v) {
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) {
            var += (x - mean) * (x - mean);
        }
        var /= v.size() > 1 ? static_cast<double>(v.size() - 1) : 1.0;
        return std::pair{mean, var};
    };

    std::uint64_t task = 0;
    for (auto t : c.ts) {
        const auto dist = exact_distribution(table, t);
        for (auto m : c.estimator.ms) {
            // One batch of m samples serves every mask.
            const auto batch = sample(dist, m, child_seed(c.seed, 1, task));
            const auto matrix = MeasurementMatrix::from_masks(c.n, batch.samples);
            networks.push_back(Json{{"t", t}, {"m", m}, {"network", to_json(export_two_layer_network(matrix))}});
            for (std::size_t i = 0; i < masks.size(); i++) {
                const auto &s = masks[i];
                const double p = std::clamp(table[s], 0.0, 1.0);
                const auto stats = estimator_stats(p, t, m);
                const auto hc = sample_hidden_cut_estimates(
                    dist, s, m, c.estimator.trials, child_seed(c.seed, 2, 2 * (task * masks.size() + i)));
                const auto sw = sample_swap_test_estimates(
                    p, t, m, c.estimator.trials, child_seed(c.seed, 2, 2 * (task * masks.size() + i) + 1));
                const auto [hc_mean, hc_var] = moments(hc);
                const auto [sw_mean, sw_var] = moments(sw);
                const double ks = ks_statistic(hc, sw);
                const double crit = ks_critical_value(hc.size(), sw.size(), c.estimator.alpha);
                csv += detail::join(
                    {s.str(), std::to_string(t), std::to_string(m), format_double(p), format_double(stats.mean),
                     format_double(estimate_purity_t(matrix, s)), format_double(stats.mean),
                     format_double(stats.variance), format_double(stats.snr), format_double(hc_mean),
                     format_double(hc_var), format_double(sw_mean), format_double(sw_var), format_double(ks),
                     format_double(crit), ks <= crit ? "1" : "0"});
            }
            task++;
        }
    }

    // Hidden cut samples are reusable across masks; each swap test estimate is not.
    std::string shots_csv = detail::csv_header(c) +
                            detail::join({"m", "estimates", "hidden_cut_shots", "swap_test_shots"});
    const std::size_t all_masks = (std::size_t{1} << c.n) - 2;
    for (auto m : c.estimator.ms) {
        for (std::size_t count : {std::size_t{1}, masks.size(), all_masks}) {
            shots_csv += detail::join(
                {std::to_string(m), std::to_string(count), std::to_string(m), std::to_string(m * count)});
        }
    }
    return {
        {"estimator_demo.csv", csv},
        {"estimator_shots.csv", shots_csv},
        {"estimator_networks.json", detail::artifact_json(c, Json{{"networks", std::move(networks)}})}};
}

/// Overlap-path distributions against t-fold group convolution for random
/// character mixtures, plus the Z_2^n specialization against the purity path.
inline std::vector<Artifact> run_abelian_demo(const ExperimentConfig &c) {
    validate(c);
    std::string csv = detail::csv_header(c) +
                      detail::join({"moduli", "mixture", "t", "max_abs_diff_convolution", "min_probability",
                                    "total_probability"});
    Json examples = Json::array();
    auto name = [](const std::vector<unsigned> &moduli) {
        std::string out;
        for (std::size_t i = 0; i < moduli.size(); i++) {
            out += (i ? "x" : "") + std::to_string(moduli[i]);
        }
        return out;
    };
    for (std::size_t gi = 0; gi < c.abelian.groups.size(); gi++) {
        const AbelianGroup group(c.abelian.groups[gi]);
        for (std::size_t j = 0; j < c.abelian.mixtures; j++) {
            const auto mix = random_character_mixture(group, child_seed(c.seed, 0, gi * c.abelian.mixtures + j),
                                                      c.abelian.sparsity);
            const auto p1 = distribution_from_overlap(mix.overlap, 1, group);
            auto conv = p1;
            unsigned power = 1;
            for (auto t : c.ts) {
                while (power < t) {
                    conv = group_convolve(conv, p1, group);
                    power++;
                }
                const auto p = distribution_from_overlap(mix.overlap, t, group);
                double diff = 0.0, lo = 1.0, total = 0.0;
                for (std::size_t k = 0; k < p.size(); k++) {
                    diff = std::max(diff, std::abs(p[k] - conv[k]));
                    lo = std::min(lo, p[k]);
                    total += p[k];
                }
                csv += detail::join(
                    {name(group.moduli()), std::to_string(j), std::to_string(t), format_double(diff),
                     format_double(lo), format_double(total)});
            }
            if (j == 0) {
                examples.push_back(Json{
                    {"overlap", group_table_to_json(group, mix.overlap.values)},
                    {"p1", group_table_to_json(group, p1)}});
            }
        }
    }

    // Z_2^n with the purity table as overlap.
    const auto psi = build_state(c.state, c.n, child_seed(c.seed, 0, 0));
    const auto table = purity_table(psi);
    OverlapFunction o;
    for (double v : table.values) {
        o.values.emplace_back(v, 0.0);
    }
    const auto binary = AbelianGroup::binary(c.n);
    Json specialization = Json::array();
    for (auto t : c.ts) {
        const auto a = distribution_from_overlap(o, t, binary);
        const auto b = exact_distribution(table, t).probs;
        double diff = 0.0;
        for (std::size_t k = 0; k < a.size(); k++) {
            diff = std::max(diff, std::abs(a[k] - b[k]));
        }
        specialization.push_back(Json{{"t", t}, {"max_abs_diff", diff}});
    }
    return {
        {"abelian_demo.csv", csv},
        {"abelian_demo.json",
         detail::artifact_json(c, Json{{"examples", std::move(examples)}, {"binary_specialization", specialization}})}};
}

/// Dispatches on a CLI verb.
inline std::vector<Artifact> run_experiment(const std::string &verb, const ExperimentConfig &c) {
    if (verb == "purity-scan") {
        return run_purity_scan(c);
    }
    if (verb == "dist-scan") {
        return run_distribution_scan(c);
    }
    if (verb == "planted-sweep") {
        return run_planted_cut_sweep(c);
    }
    if (verb == "estimator-demo") {
        return run_estimator_demo(c);
    }
    if (verb == "abelian-demo") {
        return run_abelian_demo(c);
    }
    throw ConfigError("unknown experiment '" + verb + "'");
}

}  // namespace hcut
