// soliton-forge: construct gradient Kahler-Ricci soliton profiles on line
// bundles, locate critical parameters, classify completeness, sweep the
// parameter axis, and run the numerical verification suites.
//
// Exit codes: 0 success, 1 invalid spec/config, 2 ill-defined metric
// requested from `construct`, 3 numerical failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "koiso/classify.hpp"
#include "koiso/criticals.hpp"
#include "koiso/errors.hpp"
#include "koiso/geometry.hpp"
#include "koiso/job.hpp"
#include "koiso/model.hpp"
#include "koiso/oracle.hpp"
#include "koiso/profile.hpp"

namespace {

using namespace koiso;

struct ExitWith {
    int code;
};

int exit_code_for(const Error& e) {
    if (dynamic_cast<const NoSignChange*>(&e) ||
        dynamic_cast<const OrderingViolation*>(&e) ||
        dynamic_cast<const ClassificationConflict*>(&e) ||
        dynamic_cast<const UndeterminedGrowth*>(&e) ||
        dynamic_cast<const QuadratureFailure*>(&e) ||
        dynamic_cast<const StepFailure*>(&e) ||
        dynamic_cast<const RangeOverflow*>(&e) ||
        dynamic_cast<const GridTooClose*>(&e) ||
        dynamic_cast<const PositivityViolation*>(&e) ||
        dynamic_cast<const DegenerateExponent*>(&e) ||
        dynamic_cast<const BelowUmin*>(&e) ||
        dynamic_cast<const AtOrBelowUmin*>(&e))
        return 3;
    return 1;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot open output file \"" + out + "\"");
    f << text;
    f.flush();
    if (!f) throw Error("failed writing \"" + out + "\"");
}

struct FlagValues {
    std::string cls;
    int base_dim = 0;
    std::vector<double> lambdas;
    double e = 0.0;
    std::string e_mode;
    double umin = 0.0;
    int samples = 200;
    double u_cap = 0.0;
    double tol = 1e-9;
    std::string out;
    std::string format;
    std::string job_path;
    double e_min = 0.0;
    double e_max = 0.0;
    int steps = 0;
};

struct CommonOpts {
    CLI::Option* cls = nullptr;
    CLI::Option* base_dim = nullptr;
    CLI::Option* lambda = nullptr;
    CLI::Option* e = nullptr;
    CLI::Option* e_mode = nullptr;
    CLI::Option* umin = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* u_cap = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* job = nullptr;
};

CommonOpts add_common_flags(CLI::App* cmd, FlagValues& v) {
    CommonOpts o;
    o.cls = cmd->add_option("--class", v.cls,
                            "Soliton class: shrinking | expanding | steady");
    o.base_dim = cmd->add_option("--base-dim", v.base_dim,
                                 "Complex dimension of the base (default: number of lambdas)");
    o.lambda = cmd->add_option("--lambda", v.lambdas,
                               "Curvature eigenvalue; repeat once per base direction");
    o.e = cmd->add_option("--E", v.e, "Soliton parameter E");
    o.e_mode = cmd->add_option("--E-mode", v.e_mode,
                               "Use a computed critical value: E0 | E1 (shrinking only)");
    o.umin = cmd->add_option("--umin", v.umin, "Zero-section value of U (steady only)");
    o.samples = cmd->add_option("--samples", v.samples,
                                "Arclength-uniform sample rows (default 200)");
    o.u_cap = cmd->add_option("--u-cap", v.u_cap, "Upper U limit for sampling");
    o.tol = cmd->add_option("--tol", v.tol,
                            "Decision band around E0/E1 (default 1e-9)");
    o.out = cmd->add_option("--out", v.out, "Output file (default: stdout)");
    o.format = cmd->add_option("--format", v.format, "Table format: csv | json");
    o.job = cmd->add_option("--job", v.job_path,
                            "JSON job file; explicit flags override its fields");
    return o;
}

JobConfig merge_job(const FlagValues& v, const CommonOpts& o) {
    JobConfig job;
    if (o.job->count()) job = job_from_json_file(v.job_path);
    if (o.cls->count()) job.soliton_class = v.cls;
    if (o.base_dim->count()) job.base_dim = v.base_dim;
    if (o.lambda->count()) job.lambdas = v.lambdas;
    if (o.e->count()) job.e = v.e;
    if (o.e_mode->count()) job.e_mode = v.e_mode;
    if (o.umin->count()) job.umin = v.umin;
    if (o.samples->count()) job.samples = v.samples;
    if (o.u_cap->count()) job.u_cap = v.u_cap;
    if (o.tol->count()) job.tol = v.tol;
    if (o.out->count()) job.out = v.out;
    if (o.format->count()) job.format = v.format;
    // An explicit E supersedes a job-file E_mode and vice versa; giving both
    // explicitly is rejected later in resolve_e.
    if (o.e->count() && !o.e_mode->count()) job.e_mode.reset();
    if (o.e_mode->count() && !o.e->count()) job.e.reset();
    return job;
}

BundleSpec spec_of(const JobConfig& job) {
    if (job.soliton_class.empty())
        throw Error("missing soliton class (--class or a job file)");
    const ValidationResult vr = validate_spec(raw_config_of(job));
    if (!vr.ok()) {
        for (const Violation& v : vr.violations)
            std::cerr << "invalid spec: " << v.message << "\n";
        throw ExitWith{1};
    }
    return *vr.spec;
}

double resolve_e(const JobConfig& job, const BundleSpec& spec) {
    if (job.e_mode) {
        if (job.e) throw Error("give either E or E_mode, not both");
        if (spec.soliton_class != SolitonClass::Shrinking)
            throw Error("E_mode requires the shrinking class");
        const CriticalValues crit = find_criticals(spec);
        if (*job.e_mode == "E0") return crit.e0;
        if (*job.e_mode == "E1") return crit.e1;
        throw Error("E_mode must be \"E0\" or \"E1\"");
    }
    if (!job.e) throw Error("E is required (--E or --E-mode)");
    return *job.e;
}

std::optional<double> umin_of(const JobConfig& job) { return job.umin; }

int cmd_criticals(const JobConfig& job) {
    const BundleSpec spec = spec_of(job);
    if (spec.soliton_class != SolitonClass::Shrinking) {
        std::cerr << "error: criticals defined for shrinking only\n";
        return 1;
    }
    const CriticalValues crit = find_criticals(spec);
    emit(job.out, criticals_to_json(crit) + "\n");
    return 0;
}

int cmd_classify(const JobConfig& job) {
    const BundleSpec spec = spec_of(job);
    const double e = resolve_e(job, spec);
    const CompletenessReport rep = classify(spec, e, umin_of(job), job.tol);
    emit(job.out, report_to_json(rep) + "\n");
    return 0;
}

int cmd_construct(const JobConfig& job) {
    const BundleSpec spec = spec_of(job);
    const double e = resolve_e(job, spec);
    const CompletenessReport rep = classify(spec, e, umin_of(job), job.tol);
    if (rep.verdict == CompletenessCase::IllDefined) {
        std::cerr << "construct refused: the requested metric is ill-defined on "
                     "the punctured bundle\n";
        for (const std::string& d : rep.diagnostics) std::cerr << "  " << d << "\n";
        return 2;
    }
    const SolitonProfile p = build_profile(spec, e, umin_of(job));
    SampleOptions opt;
    opt.n_samples = job.samples;
    opt.u_cap = job.u_cap;
    const GeometryTable table = sample_geometry(p, opt);
    if (job.format == "json") {
        emit(job.out, table_to_json(table) + "\n");
    } else if (job.format == "csv" || job.format.empty()) {
        std::ostringstream ss;
        write_table_csv(ss, table);
        emit(job.out, ss.str());
    } else {
        throw Error("format must be \"csv\" or \"json\"");
    }
    return 0;
}

struct SweepRow {
    double e = 0.0;
    std::string verdict;
    double umax = 0.0;
    std::optional<double> e0, e1;
};

unsigned sweep_thread_count(std::size_t n_jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SOLITON_FORGE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && cap < 1024)
            n = std::min(n, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(
        std::min<std::size_t>(n, std::max<std::size_t>(n_jobs, 1)));
}

int cmd_sweep(const JobConfig& job, double e_min, double e_max, int steps) {
    const BundleSpec spec = spec_of(job);
    if (job.e || job.e_mode)
        throw Error("sweep takes --E-min/--E-max/--steps, not a fixed E");
    if (steps < 1) throw Error("sweep needs steps >= 1");
    if (!(e_min <= e_max)) throw Error("sweep needs E-min <= E-max");

    std::vector<double> grid;
    if (steps == 1) {
        grid.push_back(e_min);
    } else {
        for (int i = 0; i < steps; ++i)
            grid.push_back(e_min + (e_max - e_min) * i / (steps - 1));
    }
    // The critical values themselves are the interesting rows of a shrinking
    // sweep; a uniform grid almost never hits them, so add them explicitly.
    if (spec.soliton_class == SolitonClass::Shrinking) {
        const CriticalValues crit = find_criticals(spec);
        for (double c : {crit.e0, crit.e1})
            if (c >= e_min && c <= e_max) grid.push_back(c);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }

    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_err;
    const auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                const CompletenessReport rep =
                    classify(spec, grid[i], umin_of(job), job.tol);
                rows[i] = SweepRow{grid[i], std::string(to_string(rep.verdict)),
                                   rep.umax, rep.e0, rep.e1};
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mu);
                if (!first_err) first_err = std::current_exception();
                return;
            }
        }
    };
    const unsigned n_threads = sweep_thread_count(grid.size());
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    if (first_err) std::rethrow_exception(first_err);

    std::ostringstream ss;
    ss << "E,case,umax,E0,E1\n";
    for (const SweepRow& r : rows) {
        ss << format_double(r.e) << ',' << r.verdict << ','
           << format_double(r.umax) << ','
           << (r.e0 ? format_double(*r.e0) : "nan") << ','
           << (r.e1 ? format_double(*r.e1) : "nan") << '\n';
    }
    emit(job.out, ss.str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify: residual and cross-check suites over one constructed profile.

struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    std::string note;
};

std::vector<double> interior_points(double umin, double cap, int n_uniform) {
    std::vector<double> us;
    const double span = cap - umin;
    for (int k = 1; k <= 12; ++k) us.push_back(umin + span * std::pow(10.0, -k));
    for (int i = 1; i < n_uniform; ++i)
        us.push_back(umin + span * i / n_uniform);
    std::sort(us.begin(), us.end());
    return us;
}

double exp_amplification(const SolitonProfile& p, double u) {
    if (p.e <= 0.0) return 1.0;
    return std::exp(std::min(700.0, p.e * (u - p.umin)));
}

int cmd_verify(const JobConfig& job, bool corrupt_sigma) {
    const BundleSpec spec = spec_of(job);
    const double e = resolve_e(job, spec);
    const SolitonProfile clean = build_profile(spec, e, umin_of(job));

    const double umax = umax_of(clean);
    double cap = job.u_cap.value_or(std::min(umax, clean.umin + 50.0));
    if (!std::isfinite(cap) || !(cap > clean.umin))
        throw Error("verify: u_cap must be finite and exceed Umin");
    const bool cap_is_umax = cap >= umax;
    if (cap_is_umax) cap = umax;

    SolitonProfile p = clean;
    if (corrupt_sigma) {
        // Negative control: push the stored numerator off the true solution.
        // sigma_shifted is what phi evaluation reads; the derivative
        // polynomials stay clean, so the curvature cross-checks see an
        // inconsistent profile too. Every residual suite must notice.
        std::vector<double> cs(p.sigma_shifted.coeffs().begin(),
                               p.sigma_shifted.coeffs().end());
        cs.resize(std::max<std::size_t>(cs.size(), 2), 0.0);
        cs[1] += 0.1;
        p.sigma_shifted = Polynomial(std::move(cs));
    }

    const double eps = default_base_einstein_sign(spec.soliton_class);
    std::vector<SuiteResult> results;
    const auto run_suite = [&](const char* name, auto&& body) {
        SuiteResult r;
        r.name = name;
        try {
            body(r);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.note = ex.what();
        }
        results.push_back(std::move(r));
    };

    const std::vector<double> grid = interior_points(p.umin, cap, 60);

    run_suite("ode_residual", [&](SuiteResult& r) {
        double worst = 0.0;
        for (double u : grid) {
            const double denom =
                1.0 + std::abs(p.e * phi(p, u)) + std::abs(source_value(p, u));
            worst = std::max(worst, std::abs(ode_residual(p, u)) / denom);
        }
        r.worst = worst;
        r.pass = worst <= 1e-9;
    });

    run_suite("profile_vs_quadrature", [&](SuiteResult& r) {
        // The snapped exponential term at E0 carries an O(snap threshold)
        // uncertainty that e^{E(U-Umin)} amplifies; compare only where that
        // worst-case noise sits a decade under the suite tolerance.
        const double snap_scale = 1e-11 * (1.0 + p.sigma.eval_magnitude(p.umin));
        const double span = cap - p.umin;
        int used = 0;
        double worst = 0.0;
        for (int k = 0; k < 25; ++k) {
            const double d =
                1e-3 * std::pow(span / 1e-3, static_cast<double>(k) / 24.0);
            const double u = p.umin + d;
            const double q = std::abs(p.q.eval(u));
            const double amp = exp_amplification(p, u);
            const double value = phi(p, u);
            const double scale =
                1.0 + std::abs(value) +
                (p.exp_term_active
                     ? amp * std::abs(p.sigma_at_umin) / std::max(q, 1e-300)
                     : 0.0);
            if (!p.exp_term_active && p.e != 0.0 &&
                amp * snap_scale / std::max(q, 1e-300) > 1e-9 * scale)
                continue;
            const double ref = quad_phi_oracle(spec, p.e, p.umin, u);
            worst = std::max(worst, std::abs(value - ref) / scale);
            ++used;
        }
        r.worst = worst;
        r.pass = worst <= 1e-8;
        if (used == 0) {
            r.pass = true;
            r.note = "no well-conditioned comparison points";
        }
    });

    run_suite("profile_vs_ode_march", [&](SuiteResult& r) {
        // The marched solution shares the E0 amplification: initial-condition
        // and truncation error of order ~1e-13 grows like e^{E(U-Umin)}.
        const double span = cap - p.umin;
        const double mag0 = 1.0 + p.sigma.eval_magnitude(p.umin);
        int used = 0;
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double d =
                1e-2 * std::pow(span / 1e-2, static_cast<double>(k) / 7.0);
            const double u = p.umin + d;
            const double q = std::abs(p.q.eval(u));
            const double value = phi(p, u);
            const double noise =
                exp_amplification(p, u) * 1e-13 * mag0 / std::max(q, 1e-300);
            if (noise > 1e-7 * (1.0 + std::abs(value))) continue;
            const double ref = ode_phi_oracle(p, u);
            worst = std::max(worst, std::abs(value - ref) / (1.0 + std::abs(value)));
            ++used;
        }
        r.worst = worst;
        r.pass = worst <= 1e-6;
        if (used == 0) {
            r.pass = true;
            r.note = "no well-conditioned comparison points";
        }
    });

    run_suite("ricci_vs_finite_difference", [&](SuiteResult& r) {
        const double h = 1e-3;
        const double t_cap = arclength_t(p, cap);
        double worst = 0.0;
        int used = 0;
        for (int i = 1; i <= 12 && used < 8; ++i) {
            const double u = p.umin + (cap - p.umin) * i / 13.0;
            const double t = arclength_t(p, u);
            if (t < 3.0 * h || t_cap - t < 3.0 * h) continue;
            const Eigenvalues fd = fd_ricci_oracle(p, u, h, eps);
            const Eigenvalues an = ricci_eigenvalues(p, u, eps);
            worst = std::max(worst, std::abs(fd.fiber - an.fiber));
            for (std::size_t j = 0; j < an.base.size(); ++j)
                worst = std::max(worst, std::abs(fd.base[j] - an.base[j]));
            ++used;
        }
        r.worst = worst;
        r.pass = worst <= 1e-6;
        if (used == 0) {
            r.pass = true;
            r.note = "profile too short for the finite-difference stencil";
        }
    });

    run_suite("conservation_identity", [&](SuiteResult& r) {
        const double c = identity_constant(p, eps);
        double worst = 0.0;
        for (double u : grid)
            worst = std::max(worst, std::abs(soliton_identity_residual(p, u, eps)));
        r.worst = worst;
        r.pass = worst <= 1e-8 * (1.0 + std::abs(c));
    });

    run_suite("metric_signs", [&](SuiteResult& r) {
        double worst = std::numeric_limits<double>::infinity();
        for (double u : grid) {
            worst = std::min(worst, phi(p, u));
            for (double lam : spec.lambdas) worst = std::min(worst, 1.0 - u * lam);
        }
        if (spec.soliton_class == SolitonClass::Steady && p.e < 0.0) {
            for (double u : grid) {
                const Eigenvalues ric = ricci_eigenvalues(p, u, eps);
                worst = std::min(worst, ric.fiber);
                for (double b : ric.base) worst = std::min(worst, b);
            }
        }
        r.worst = worst;
        r.pass = worst > 0.0;
    });

    run_suite("monotonicity", [&](SuiteResult& r) {
        SampleOptions opt;
        opt.n_samples = std::max(job.samples, 2);
        opt.u_cap = cap;
        const GeometryTable table = sample_geometry(p, opt);
        double min_step = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            const double dt = table.rows[i].t - table.rows[i - 1].t;
            min_step = std::min(min_step, dt);
            if (!(dt > 0.0)) ok = false;
            if (!(table.rows[i].r > table.rows[i - 1].r)) ok = false;
        }
        r.worst = min_step;
        r.pass = ok;
    });

    bool all_pass = true;
    std::string failing;
    std::ostringstream ss;
    for (const SuiteResult& r : results) {
        ss << r.name << ": " << (r.pass ? "PASS" : "FAIL")
           << " (worst=" << format_double(r.worst) << ")";
        if (!r.note.empty()) ss << " [" << r.note << "]";
        ss << "\n";
        if (!r.pass) {
            all_pass = false;
            if (!failing.empty()) failing += ", ";
            failing += r.name;
        }
    }
    emit(job.out, ss.str());
    if (!all_pass) {
        std::cerr << "verify failed: " << failing << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient Kahler-Ricci soliton profiles on holomorphic line bundles"};
    app.require_subcommand(1);

    FlagValues v_crit, v_con, v_cls, v_swp, v_ver;

    CLI::App* crit = app.add_subcommand("criticals",
                                        "Locate the critical parameters E0 and E1");
    const CommonOpts o_crit = add_common_flags(crit, v_crit);

    CLI::App* con = app.add_subcommand("construct",
                                       "Sample a soliton profile into a geometry table");
    const CommonOpts o_con = add_common_flags(con, v_con);

    CLI::App* cls = app.add_subcommand("classify",
                                       "Report the completeness case for (spec, E)");
    const CommonOpts o_cls = add_common_flags(cls, v_cls);

    CLI::App* swp = app.add_subcommand("sweep",
                                       "Classify across a uniform grid of E values");
    const CommonOpts o_swp = add_common_flags(swp, v_swp);
    swp->add_option("--E-min", v_swp.e_min, "Low end of the E grid")->required();
    swp->add_option("--E-max", v_swp.e_max, "High end of the E grid")->required();
    swp->add_option("--steps", v_swp.steps, "Grid size (1 = single row at E-min)")
        ->required();

    CLI::App* ver = app.add_subcommand("verify",
                                       "Run the residual and cross-check suites");
    const CommonOpts o_ver = add_common_flags(ver, v_ver);
    bool corrupt_sigma = false;
    ver->add_flag("--corrupt-sigma", corrupt_sigma)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const auto dispatch = [&]() -> int {
        if (crit->parsed()) return cmd_criticals(merge_job(v_crit, o_crit));
        if (con->parsed()) return cmd_construct(merge_job(v_con, o_con));
        if (cls->parsed()) return cmd_classify(merge_job(v_cls, o_cls));
        if (swp->parsed())
            return cmd_sweep(merge_job(v_swp, o_swp), v_swp.e_min, v_swp.e_max,
                             v_swp.steps);
        if (ver->parsed()) return cmd_verify(merge_job(v_ver, o_ver), corrupt_sigma);
        return 1;
    };

    try {
        return dispatch();
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
