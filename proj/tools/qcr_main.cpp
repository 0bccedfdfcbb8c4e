// qcr: batch front-end for the measures/relations/BSA library.
//
// Commands: measure, verify, sweep, sample, bsa. All numeric output is
// emitted at 15 significant digits; a fixed (seed, flags) pair produces
// byte-identical output for any --workers value, because every work item is
// a pure function of (parameters, derived stream seed) and results are
// buffered and written in input order.

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qcr/bsa.hpp"
#include "qcr/convex_roof.hpp"
#include "qcr/measures.hpp"
#include "qcr/relations.hpp"
#include "qcr/serialize.hpp"
#include "qcr/state_io.hpp"
#include "qcr/states.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct RunConfig {
    std::uint64_t seed = 1;
    std::optional<double> tolerance;  // overrides every relation tolerance
    std::string format = "json";
    std::string out_path;
    int workers = 1;

    qcr::RelationConfig relation_config() const {
        return tolerance ? qcr::RelationConfig::uniform(*tolerance) : qcr::RelationConfig{};
    }
};

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path '" + cfg.out_path + "'");
    out << text;
}

// Run fn(0..count-1) on a bounded pool; results must land in per-index slots.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min<std::size_t>(std::size_t(workers), count);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (std::thread& t : pool) t.join();
}

qcr::LoadedState load_source(const std::string& file, const std::string& family) {
    if (!file.empty() && !family.empty()) throw std::invalid_argument("pass either --file or --family, not both");
    if (!file.empty()) return qcr::load_state_file(file);
    if (family.empty()) throw std::invalid_argument("a state source is required (--file or --family)");
    const qcr::ParsedState parsed = qcr::parse_state_spec(family);
    if (parsed.pure) return *parsed.pure;
    return *parsed.density;
}

qcr::DensityMatrix as_density(const qcr::LoadedState& state) {
    if (std::holds_alternative<qcr::PureState>(state)) return qcr::to_density(std::get<qcr::PureState>(state));
    return std::get<qcr::DensityMatrix>(state);
}

// ---------------------------------------------------------------------------
// measure

std::vector<std::pair<std::string, double>> measure_columns(const qcr::MeasureSet& m) {
    std::vector<std::pair<std::string, double>> cols;
    cols.emplace_back("n_qubits", double(m.n_qubits));
    cols.emplace_back("mixedness", m.mixedness);
    cols.emplace_back("purity", m.purity);
    cols.emplace_back("tr_rho_rhotilde", m.tr_rho_rhotilde);
    cols.emplace_back("hs_to_spinflip", m.hs_to_spinflip);
    cols.emplace_back("indistinguishability", m.indistinguishability);
    if (m.tangle) cols.emplace_back("tangle", *m.tangle);
    if (m.separable_uncertainty) cols.emplace_back("separable_uncertainty", *m.separable_uncertainty);
    for (std::size_t k = 0; k < m.per_qubit.size(); ++k) {
        const std::string suffix = "_q" + std::to_string(k);
        cols.emplace_back("coherence" + suffix, m.per_qubit[k].coherence);
        cols.emplace_back("predictability" + suffix, m.per_qubit[k].predictability);
        cols.emplace_back("s2bar" + suffix, m.per_qubit[k].s2bar);
    }
    return cols;
}

int cmd_measure(const RunConfig& cfg, const std::string& file, const std::string& family) {
    const qcr::LoadedState state = load_source(file, family);
    const qcr::MeasureSet m = std::holds_alternative<qcr::PureState>(state)
                                  ? qcr::measure_set(std::get<qcr::PureState>(state))
                                  : qcr::measure_set(std::get<qcr::DensityMatrix>(state));
    std::string text;
    if (cfg.format == "csv") {
        const auto cols = measure_columns(m);
        std::vector<std::string> header, row;
        for (const auto& [name, value] : cols) {
            header.push_back(name);
            row.push_back(qcr::fmt_double(value));
        }
        text = qcr::csv_row(header) + qcr::csv_row(row);
    } else {
        qcr::JsonObject doc;
        doc.add_string("command", "measure");
        doc.add_raw("measures", qcr::to_json(m));
        text = doc.render() + "\n";
    }
    write_output(cfg, text);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct IndexedReport {
    std::size_t state_index;
    qcr::RelationReport report;
};

bool relation_matches(const std::string& id, const std::string& filter) {
    if (filter.empty()) return true;
    return id == filter || id.rfind(filter + ".", 0) == 0;
}

// All relations applicable to one state.
std::vector<qcr::RelationReport> reports_for_state(const qcr::LoadedState& state, const qcr::RelationConfig& rc) {
    std::vector<qcr::RelationReport> reports;
    if (std::holds_alternative<qcr::PureState>(state)) {
        const qcr::PureState& psi = std::get<qcr::PureState>(state);
        reports = qcr::verify_pure(psi, rc);
        if (psi.n_qubits == 3)
            for (qcr::RelationReport& r : qcr::verify_monogamy(psi, rc)) reports.push_back(std::move(r));
        if (psi.n_qubits == 2)
            for (qcr::RelationReport& r : qcr::verify_two_qubit(qcr::to_density(psi), rc))
                reports.push_back(std::move(r));
        return reports;
    }
    const qcr::DensityMatrix& rho = std::get<qcr::DensityMatrix>(state);
    if (rho.n_qubits == 2) return qcr::verify_two_qubit(rho, rc);
    // the spin-flip identity eq17 holds for any qubit count
    const double tr_flip = qcr::tr_rho_rhotilde(rho);
    const double m = qcr::mixedness(rho);
    const double indist = qcr::indistinguishability(rho);
    reports.push_back(qcr::detail::make_identity(
        "eq17", {{"tr_rho_rhotilde", tr_flip}, {"M", m}, {"I", indist}}, tr_flip + m, indist, rc.identity_tol));
    return reports;
}

qcr::RelationReport werner_symmetry_report(const qcr::DensityMatrix& rho, const qcr::RelationConfig& rc) {
    const double gap = rho.matrix.max_abs_diff(qcr::spin_flip(rho).matrix);
    return qcr::detail::make_identity("spinflip_symmetry", {{"max_entrywise_gap", gap}}, gap, 0.0,
                                      std::min(rc.identity_tol, 1e-12));
}

qcr::RelationReport mems_eta_report(const qcr::DensityMatrix& rho, const qcr::RelationConfig& rc) {
    const double eta = qcr::separable_uncertainty(rho);
    const double m = qcr::mixedness(rho);
    return qcr::detail::make_identity("eta_equals_mixedness", {{"eta", eta}, {"M", m}}, eta, m, rc.identity_tol);
}

std::string render_verify(const RunConfig& cfg, const std::vector<IndexedReport>& reports, std::size_t n_states) {
    std::vector<qcr::RelationReport> flat;
    flat.reserve(reports.size());
    for (const IndexedReport& ir : reports) flat.push_back(ir.report);
    const qcr::BatchSummary summary = qcr::summarize(flat);

    if (cfg.format == "csv") {
        std::string text = qcr::csv_row({"state", "relation", "kind", "lhs", "rhs", "residual", "tolerance", "pass"});
        for (const IndexedReport& ir : reports) {
            const qcr::RelationReport& r = ir.report;
            text += qcr::csv_row({std::to_string(ir.state_index), r.relation_id,
                                  r.kind == qcr::RelationKind::Identity ? "identity" : "lower_bound",
                                  qcr::fmt_double(r.lhs), qcr::fmt_double(r.rhs), qcr::fmt_double(r.residual),
                                  qcr::fmt_double(r.tolerance), r.pass ? "1" : "0"});
        }
        return text;
    }
    qcr::JsonObject doc;
    doc.add_string("command", "verify");
    doc.add_integer("states", (long long)n_states);
    std::vector<std::string> rendered;
    rendered.reserve(reports.size());
    for (const IndexedReport& ir : reports) {
        qcr::JsonObject row;
        row.add_integer("state", (long long)ir.state_index);
        row.add_raw("report", qcr::to_json(ir.report));
        rendered.push_back(row.render());
    }
    doc.add_raw("reports", qcr::json_array(rendered));
    doc.add_raw("summary", qcr::to_json(summary));
    return doc.render() + "\n";
}

int cmd_verify(const RunConfig& cfg, const std::string& file, const std::string& family, double grid,
               int random_pure_n, int random_mixed_n, int rank, int count, const std::string& relation_filter) {
    const qcr::RelationConfig rc = cfg.relation_config();

    std::vector<std::function<std::vector<qcr::RelationReport>()>> jobs;

    const bool is_grid_family = grid > 0.0 && (family == "werner" || family == "mems");
    if (is_grid_family) {
        const int steps = int(1.0 / grid + 1e-9);
        if (family == "werner") {
            for (int i = 0; i <= steps; ++i) {
                const double lambda = std::min(1.0, i * grid);
                jobs.emplace_back([lambda, rc] {
                    const qcr::DensityMatrix rho = qcr::werner({lambda, qcr::BellState::PhiPlus});
                    std::vector<qcr::RelationReport> reports = qcr::verify_two_qubit(rho, rc);
                    reports.push_back(werner_symmetry_report(rho, rc));
                    return reports;
                });
            }
        } else {
            for (int i = 0; i <= steps; ++i)
                for (int j = 0; i + j <= steps; ++j) {
                    const double x1 = i * grid, x2 = j * grid;
                    jobs.emplace_back([x1, x2, rc] {
                        const qcr::DensityMatrix rho = qcr::mems({x1, x2});
                        std::vector<qcr::RelationReport> reports = qcr::verify_two_qubit(rho, rc);
                        reports.push_back(mems_eta_report(rho, rc));
                        return reports;
                    });
                }
        }
    } else if (random_pure_n > 0) {
        for (int i = 0; i < count; ++i) {
            const std::uint64_t seed = cfg.seed;
            const int nq = random_pure_n;
            jobs.emplace_back([seed, i, nq, rc] {
                qcr::Rng rng = qcr::Rng::stream(seed, std::uint64_t(i));
                return reports_for_state(qcr::random_pure(std::size_t(nq), rng), rc);
            });
        }
    } else if (random_mixed_n > 0) {
        for (int i = 0; i < count; ++i) {
            const std::uint64_t seed = cfg.seed;
            const int nq = random_mixed_n;
            const int r = rank > 0 ? rank : (1 << random_mixed_n);
            jobs.emplace_back([seed, i, nq, r, rc] {
                qcr::Rng rng = qcr::Rng::stream(seed, std::uint64_t(i));
                return reports_for_state(qcr::random_mixed(std::size_t(nq), std::size_t(r), rng), rc);
            });
        }
    } else {
        const qcr::LoadedState state = load_source(file, family);
        jobs.emplace_back([state, rc] { return reports_for_state(state, rc); });
    }

    std::vector<std::vector<qcr::RelationReport>> results(jobs.size());
    parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) { results[i] = jobs[i](); });

    std::vector<IndexedReport> flat;
    for (std::size_t i = 0; i < results.size(); ++i)
        for (qcr::RelationReport& r : results[i])
            if (relation_matches(r.relation_id, relation_filter)) flat.push_back({i, std::move(r)});

    write_output(cfg, render_verify(cfg, flat, jobs.size()));
    for (const IndexedReport& ir : flat)
        if (!ir.report.pass) return kExitCheckFailed;
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const RunConfig& cfg, const std::string& family, double grid) {
    if (grid <= 0.0 || grid > 1.0) throw std::invalid_argument("sweep: --grid must lie in (0, 1]");
    if (family != "werner" && family != "mems") throw std::invalid_argument("sweep: family must be werner or mems");

    struct Row {
        std::vector<double> params;
        qcr::MeasureSet m;
        double ppt_min_eig = 0.0;
    };

    std::vector<std::vector<double>> grid_points;
    const int steps = int(1.0 / grid + 1e-9);
    if (family == "werner") {
        for (int i = 0; i <= steps; ++i) grid_points.push_back({std::min(1.0, i * grid)});
    } else {
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; i + j <= steps; ++j) grid_points.push_back({i * grid, j * grid});
    }

    std::vector<Row> rows(grid_points.size());
    parallel_for(grid_points.size(), cfg.workers, [&](std::size_t i) {
        const std::vector<double>& p = grid_points[i];
        const qcr::DensityMatrix rho =
            family == "werner" ? qcr::werner({p[0], qcr::BellState::PhiPlus}) : qcr::mems({p[0], p[1]});
        rows[i] = Row{p, qcr::measure_set(rho), qcr::ppt_min_eigenvalue(rho)};
    });

    const std::vector<std::string> param_names =
        family == "werner" ? std::vector<std::string>{"lambda"} : std::vector<std::string>{"x1", "x2"};

    const auto row_columns = [&](const Row& r) {
        std::vector<std::pair<std::string, double>> cols;
        for (std::size_t k = 0; k < param_names.size(); ++k) cols.emplace_back(param_names[k], r.params[k]);
        cols.emplace_back("M", r.m.mixedness);
        cols.emplace_back("tr_rho_rhotilde", r.m.tr_rho_rhotilde);
        cols.emplace_back("I", r.m.indistinguishability);
        cols.emplace_back("tau", r.m.tangle.value_or(0.0));
        cols.emplace_back("eta", r.m.separable_uncertainty.value_or(0.0));
        cols.emplace_back("s2bar_1", r.m.per_qubit[0].s2bar);
        cols.emplace_back("s2bar_2", r.m.per_qubit[1].s2bar);
        cols.emplace_back("ppt_min_eig", r.ppt_min_eig);
        return cols;
    };

    std::string text;
    if (cfg.format == "csv") {
        std::vector<std::string> header;
        for (const auto& [name, value] : row_columns(rows[0])) header.push_back(name);
        text += qcr::csv_row(header);
        for (const Row& r : rows) {
            std::vector<std::string> cells;
            for (const auto& [name, value] : row_columns(r)) cells.push_back(qcr::fmt_double(value));
            text += qcr::csv_row(cells);
        }
    } else {
        qcr::JsonObject doc;
        doc.add_string("command", "sweep");
        doc.add_string("family", family);
        doc.add_number("grid", grid);
        std::vector<std::string> rendered;
        rendered.reserve(rows.size());
        for (const Row& r : rows) {
            qcr::JsonObject obj;
            for (const auto& [name, value] : row_columns(r)) obj.add_number(name, value);
            rendered.push_back(obj.render());
        }
        doc.add_raw("rows", qcr::json_array(rendered));
        text = doc.render() + "\n";
    }
    write_output(cfg, text);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const RunConfig& cfg, int n, int count, int rank, bool pure) {
    if (n < 1 || n > 5) throw std::invalid_argument("sample: --n must lie in [1, 5]");
    if (count < 1) throw std::invalid_argument("sample: --count must be >= 1");
    if (!pure && rank < 1) throw std::invalid_argument("sample: pass --pure or --rank <r>");
    const qcr::RelationConfig rc = cfg.relation_config();

    struct SampleRow {
        double mixedness = 0.0, tr_flip = 0.0, indist = 0.0;
        std::vector<qcr::RelationReport> reports;
    };

    std::vector<SampleRow> rows(count);
    parallel_for(std::size_t(count), cfg.workers, [&](std::size_t i) {
        qcr::Rng rng = qcr::Rng::stream(cfg.seed, i);
        SampleRow row;
        if (pure) {
            const qcr::PureState psi = qcr::random_pure(std::size_t(n), rng);
            const qcr::DensityMatrix rho = qcr::to_density(psi);
            row.mixedness = qcr::mixedness(rho);
            row.tr_flip = qcr::tr_rho_rhotilde(rho);
            row.indist = qcr::indistinguishability(rho);
            row.reports = reports_for_state(psi, rc);
        } else {
            const qcr::DensityMatrix rho = qcr::random_mixed(std::size_t(n), std::size_t(rank), rng);
            row.mixedness = qcr::mixedness(rho);
            row.tr_flip = qcr::tr_rho_rhotilde(rho);
            row.indist = qcr::indistinguishability(rho);
            row.reports = reports_for_state(rho, rc);
        }
        rows[i] = std::move(row);
    });

    // canonical relation order = first appearance in row 0
    std::vector<std::string> relation_ids;
    for (const qcr::RelationReport& r : rows[0].reports) relation_ids.push_back(r.relation_id);

    std::map<std::string, double> max_residuals;
    bool all_pass = true;
    std::size_t total_reports = 0;
    for (const SampleRow& row : rows)
        for (const qcr::RelationReport& r : row.reports) {
            ++total_reports;
            all_pass = all_pass && r.pass;
            auto [it, inserted] = max_residuals.try_emplace(r.relation_id, r.deviation());
            if (!inserted) it->second = std::max(it->second, r.deviation());
        }

    std::string text;
    if (cfg.format == "csv") {
        std::vector<std::string> header = {"index", "M", "tr_rho_rhotilde", "I"};
        for (const std::string& id : relation_ids) header.push_back("residual_" + id);
        text += qcr::csv_row(header);
        for (int i = 0; i < count; ++i) {
            std::vector<std::string> cells = {std::to_string(i), qcr::fmt_double(rows[i].mixedness),
                                              qcr::fmt_double(rows[i].tr_flip), qcr::fmt_double(rows[i].indist)};
            for (const qcr::RelationReport& r : rows[i].reports) cells.push_back(qcr::fmt_double(r.residual));
            text += qcr::csv_row(cells);
        }
    } else {
        qcr::JsonObject doc;
        doc.add_string("command", "sample");
        doc.add_integer("n", n);
        doc.add_integer("count", count);
        if (pure)
            doc.add_bool("pure", true);
        else
            doc.add_integer("rank", rank);
        doc.add_integer("seed", (long long)cfg.seed);
        std::vector<std::string> rendered;
        rendered.reserve(rows.size());
        for (int i = 0; i < count; ++i) {
            qcr::JsonObject obj;
            obj.add_integer("index", i);
            obj.add_number("M", rows[i].mixedness);
            obj.add_number("tr_rho_rhotilde", rows[i].tr_flip);
            obj.add_number("I", rows[i].indist);
            qcr::JsonObject residuals;
            for (const qcr::RelationReport& r : rows[i].reports) residuals.add_number(r.relation_id, r.residual);
            obj.add_raw("residuals", residuals.render());
            rendered.push_back(obj.render());
        }
        doc.add_raw("rows", qcr::json_array(rendered));
        qcr::JsonObject summary;
        qcr::JsonObject by_relation;
        for (const auto& [id, value] : max_residuals) by_relation.add_number(id, value);
        summary.add_raw("max_abs_residual_by_relation", by_relation.render());
        summary.add_integer("total_reports", (long long)total_reports);
        summary.add_bool("all_pass", all_pass);
        doc.add_raw("summary", summary.render());
        text = doc.render() + "\n";
    }
    write_output(cfg, text);
    return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// bsa

int cmd_bsa(const RunConfig& cfg, const std::string& file, const std::string& family, int budget) {
    const qcr::LoadedState state = load_source(file, family);
    const qcr::DensityMatrix rho = as_density(state);
    if (rho.n_qubits != 2) throw std::invalid_argument("bsa: expected a two-qubit state");

    qcr::BsaOptions opt;
    opt.restarts = budget;
    opt.seed = cfg.seed;
    const qcr::LSDecomposition d = qcr::best_separable_approximation(rho, opt);
    const std::vector<qcr::RelationReport> reports = qcr::verify_ls(rho, d, cfg.relation_config());
    const qcr::BatchSummary summary = qcr::summarize(reports);

    std::string text;
    if (cfg.format == "csv") {
        text += qcr::csv_row({"lambda", "converged", "residual_min_eig", "residual_ppt_min_eig", "eq22_residual",
                              "eq23_residual", "eq24_residual"});
        text += qcr::csv_row({qcr::fmt_double(d.lambda), d.converged ? "1" : "0",
                              qcr::fmt_double(d.certificates.residual_min_eig),
                              qcr::fmt_double(d.certificates.residual_ppt_min_eig),
                              qcr::fmt_double(reports[0].residual), qcr::fmt_double(reports[1].residual),
                              qcr::fmt_double(reports[2].residual)});
    } else {
        qcr::JsonObject doc;
        doc.add_string("command", "bsa");
        doc.add_number("lambda", d.lambda);
        doc.add_bool("converged", d.converged);
        if (d.psi_e) {
            std::vector<std::string> amp;
            for (const qcr::cplx& a : d.psi_e->amplitudes)
                amp.push_back("[" + qcr::fmt_double(a.real()) + ", " + qcr::fmt_double(a.imag()) + "]");
            doc.add_raw("psi_e", qcr::json_array(amp));
        } else {
            doc.add_null("psi_e");
        }
        if (d.rho_s) {
            std::vector<std::string> entries;
            for (const qcr::cplx& a : d.rho_s->matrix.entries())
                entries.push_back("[" + qcr::fmt_double(a.real()) + ", " + qcr::fmt_double(a.imag()) + "]");
            doc.add_raw("rho_s", qcr::json_array(entries));
        } else {
            doc.add_null("rho_s");
        }
        qcr::JsonObject certs;
        certs.add_number("residual_min_eig", d.certificates.residual_min_eig);
        certs.add_number("residual_ppt_min_eig", d.certificates.residual_ppt_min_eig);
        doc.add_raw("certificates", certs.render());
        std::vector<std::string> rendered;
        rendered.reserve(reports.size());
        for (const qcr::RelationReport& r : reports) rendered.push_back(qcr::to_json(r));
        doc.add_raw("reports", qcr::json_array(rendered));
        doc.add_raw("summary", qcr::to_json(summary));
        text = doc.render() + "\n";
    }
    write_output(cfg, text);
    return summary.passed == summary.total ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement and complementarity measures for few-qubit states"};
    app.require_subcommand(1);

    RunConfig cfg;
    double tol = -1.0;
    app.add_option("--seed", cfg.seed, "base seed; work item i uses derived stream i");
    app.add_option("--tol", tol, "override every relation tolerance");
    app.add_option("--format", cfg.format, "output format: json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out_path, "output path (default: stdout)");
    app.add_option("--workers", cfg.workers, "worker threads; output is identical for any value")
        ->check(CLI::Range(1, 64));

    std::string file, family, relation_filter;
    double grid = 0.0;
    int random_pure_n = 0, random_mixed_n = 0, rank = 0, count = 1, n = 0, budget = 64;
    bool pure = false;

    CLI::App* measure = app.add_subcommand("measure", "compute the full measure set of one state");
    measure->fallthrough();
    measure->add_option("--file", file, "state file (JSON)");
    measure->add_option("--family", family, "family spec, e.g. werner:0.5 or bell:phi+");

    CLI::App* verify = app.add_subcommand("verify", "evaluate every applicable relation");
    verify->fallthrough();
    verify->add_option("--file", file, "state file (JSON)");
    verify->add_option("--family", family, "family spec, or werner|mems with --grid");
    verify->add_option("--grid", grid, "grid step for family sweeps");
    verify->add_option("--random-pure", random_pure_n, "verify random pure states of n qubits");
    verify->add_option("--random-mixed", random_mixed_n, "verify random mixed states of n qubits");
    verify->add_option("--rank", rank, "rank for --random-mixed (default: full)");
    verify->add_option("--count", count, "number of random states");
    verify->add_option("--relation", relation_filter, "only report this relation id");

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate measures across a family grid");
    sweep->fallthrough();
    sweep->add_option("--family", family, "werner or mems")->required();
    sweep->add_option("--grid", grid, "grid step")->required();

    CLI::App* sample = app.add_subcommand("sample", "Monte Carlo residual study");
    sample->fallthrough();
    sample->add_option("--n", n, "qubit count")->required();
    sample->add_option("--count", count, "sample count");
    sample->add_option("--rank", rank, "Ginibre rank");
    sample->add_flag("--pure", pure, "sample Haar-random pure states");

    CLI::App* bsa = app.add_subcommand("bsa", "best separable approximation of a two-qubit state");
    bsa->fallthrough();
    bsa->add_option("--file", file, "state file (JSON)");
    bsa->add_option("--family", family, "family spec");
    bsa->add_option("--budget", budget, "solver restart budget");

    CLI11_PARSE(app, argc, argv);
    if (tol > 0.0) cfg.tolerance = tol;

    try {
        if (*measure) return cmd_measure(cfg, file, family);
        if (*verify)
            return cmd_verify(cfg, file, family, grid, random_pure_n, random_mixed_n, rank, count, relation_filter);
        if (*sweep) return cmd_sweep(cfg, family, grid);
        if (*sample) return cmd_sample(cfg, n, count, rank, pure);
        if (*bsa) return cmd_bsa(cfg, file, family, budget);
    } catch (const qcr::StateValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
