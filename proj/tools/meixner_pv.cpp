// Command-line front end: recurrence coefficient tables, verification
// suites, and c-grid sweeps, as CSV or JSON reports.
//
// Exit codes: 0 success, 1 validation or usage failure, 2 verification
// failure. Reports carry no timestamps, so a fixed seed gives byte-identical
// output across runs.

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "meixnerpv/meixnerpv.hpp"

namespace mpv = meixnerpv;

namespace {

struct RunConfig {
    std::string gamma{"1.5"};
    std::string beta{"0.7"};
    std::string c{"0.4"};
    std::string tau{"1"};
    std::string lattice{"n"};
    int nmax{10};
    unsigned bits{256};
    std::string rel_tol; // empty: precision default
    std::string abs_tol;
    std::string format{"csv"};
    unsigned long long seed{1};
    int samples{100};
    std::string out;
    std::string suite{"all"};
    std::string c_min, c_max;
    int c_steps{1};
};

mpv::Lattice parse_lattice(const std::string& name) {
    if (name == "n") return mpv::Lattice::PlainN;
    if (name == "shifted") return mpv::Lattice::Shifted;
    if (name == "bilattice") return mpv::Lattice::BiLattice;
    throw mpv::ValidationError("unknown lattice: " + name +
                               " (expected n, shifted, or bilattice)");
}

template <class R>
mpv::PrecisionConfig<R> make_precision(const RunConfig& rc) {
    mpv::PrecisionConfig<R> cfg(rc.bits);
    if (!rc.rel_tol.empty()) cfg.rel_tol = mpv::from_string<R>(rc.rel_tol);
    if (!rc.abs_tol.empty()) cfg.abs_tol = mpv::from_string<R>(rc.abs_tol);
    return cfg;
}

template <class R>
mpv::ModelParams<R> make_params(const RunConfig& rc, const std::string& c_str) {
    mpv::ModelParams<R> p{mpv::from_string<R>(rc.gamma), mpv::from_string<R>(rc.beta),
                          mpv::from_string<R>(c_str), parse_lattice(rc.lattice),
                          mpv::from_string<R>(rc.tau)};
    mpv::require_valid(p);
    return p;
}

void emit(const mpv::Report& rep, const RunConfig& rc) {
    std::string text = rc.format == "json" ? mpv::to_json(rep) : mpv::to_csv(rep);
    if (rc.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(rc.out, std::ios::binary);
    if (!f) throw mpv::ValidationError("cannot open output file: " + rc.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

template <class R>
void append_common_meta(mpv::Report& rep, const RunConfig& rc,
                        const mpv::PrecisionConfig<R>& cfg) {
    rep.meta.emplace_back("gamma", rc.gamma);
    rep.meta.emplace_back("beta", rc.beta);
    rep.meta.emplace_back("tau", rc.tau);
    rep.meta.emplace_back("lattice", rc.lattice);
    rep.meta.emplace_back("precision_bits", std::to_string(rc.bits));
    rep.meta.emplace_back("rel_tol", mpv::to_decimal_string(cfg.rel_tol, 3));
    rep.meta.emplace_back("abs_tol", mpv::to_decimal_string(cfg.abs_tol, 3));
}

// One table row per n; u and v stay blank at gamma = 1 where the
// (u, v) coordinates are undefined.
template <class R>
void append_coeff_rows(mpv::Report& rep, const mpv::RecurrenceTable<R>& table,
                       int digits, const std::string& c_prefix) {
    using std::abs;
    const bool have_uv = abs(table.params.gamma - R(1)) >= R(1e-9);
    std::vector<mpv::UVState<R>> chain;
    if (have_uv) chain = mpv::uv_chain(table);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const auto& e = table.entries[i];
        std::vector<std::string> row;
        if (!c_prefix.empty()) row.push_back(c_prefix);
        row.push_back(std::to_string(e.n));
        row.push_back(mpv::to_decimal_string(e.a2, digits));
        row.push_back(mpv::to_decimal_string(e.b, digits));
        row.push_back(have_uv ? mpv::to_decimal_string(chain[i].u, digits) : "");
        row.push_back(have_uv ? mpv::to_decimal_string(chain[i].v, digits) : "");
        rep.rows.push_back(std::move(row));
    }
}

template <class R>
int cmd_coeffs(const RunConfig& rc) {
    auto cfg = make_precision<R>(rc);
    auto p = make_params<R>(rc, rc.c);
    auto table = mpv::stieltjes_coeffs(p, rc.nmax, cfg);

    mpv::Report rep;
    rep.command = "coeffs";
    append_common_meta(rep, rc, cfg);
    rep.meta.emplace_back("c", rc.c);
    rep.meta.emplace_back("n_max", std::to_string(rc.nmax));
    rep.meta.emplace_back("truncation_k", std::to_string(table.truncation_k));
    rep.meta.emplace_back("tail_bound", mpv::to_decimal_string(table.tail_bound, 3));
    rep.meta.emplace_back("est_correct_digits",
                          mpv::to_decimal_string(table.est_correct_digits, 3));
    rep.columns = {"n", "a2", "b", "u", "v"};
    append_coeff_rows(rep, table, static_cast<int>(mpv::digits10_for_bits(rc.bits)), "");
    emit(rep, rc);
    return 0;
}

template <class R>
int cmd_verify(const RunConfig& rc) {
    auto cfg = make_precision<R>(rc);
    mpv::VerifyOptions opt;
    opt.seed = rc.seed;
    opt.samples = rc.samples;
    auto results = mpv::verify_suite(rc.suite, cfg, opt);

    mpv::Report rep = mpv::checks_to_report(results);
    rep.meta.emplace_back("suite", rc.suite);
    rep.meta.emplace_back("seed", std::to_string(rc.seed));
    rep.meta.emplace_back("samples", std::to_string(rc.samples));
    rep.meta.emplace_back("precision_bits", std::to_string(rc.bits));
    emit(rep, rc);
    for (const auto& r : results)
        if (r.status == mpv::CheckStatus::Fail) return 2;
    return 0;
}

// Long-format sweep over a c-grid. Grid points are independent, so they run
// on a small worker pool; rows are emitted in grid order regardless of
// completion order.
template <class R>
int cmd_table(const RunConfig& rc) {
    auto cfg = make_precision<R>(rc);

    std::vector<R> grid;
    std::vector<std::string> grid_str;
    if (rc.c_min.empty() && rc.c_max.empty()) {
        grid.push_back(mpv::from_string<R>(rc.c));
        grid_str.push_back(rc.c);
    } else {
        if (rc.c_min.empty() || rc.c_max.empty())
            throw mpv::ValidationError("--c-min and --c-max must be given together");
        if (rc.c_steps < 1)
            throw mpv::ValidationError("--c-steps must be at least 1");
        R lo = mpv::from_string<R>(rc.c_min);
        R hi = mpv::from_string<R>(rc.c_max);
        for (int i = 0; i < rc.c_steps; ++i) {
            R ci = rc.c_steps == 1
                       ? lo
                       : lo + (hi - lo) * R(i) / R(rc.c_steps - 1);
            grid.push_back(ci);
            grid_str.push_back(mpv::to_decimal_string(ci, static_cast<int>(mpv::digits10_for_bits(rc.bits))));
        }
    }

    // Validate every grid point up front so workers cannot hit exit-code
    // paths concurrently.
    std::vector<mpv::ModelParams<R>> params;
    for (const auto& cs : grid_str) params.push_back(make_params<R>(rc, cs));

    std::vector<mpv::RecurrenceTable<R>> tables(grid.size());
    std::vector<std::string> errors(grid.size());
    {
        unsigned hw = std::thread::hardware_concurrency();
        unsigned workers = static_cast<unsigned>(
            std::min<std::size_t>(grid.size(), hw ? hw : 2));
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            if (rc.bits != 53) mpv::set_working_precision(rc.bits);
            for (std::size_t i = next.fetch_add(1); i < grid.size();
                 i = next.fetch_add(1)) {
                try {
                    tables[i] = mpv::stieltjes_coeffs(params[i], rc.nmax, cfg);
                } catch (const mpv::Error& e) {
                    errors[i] = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
    }
    for (const auto& msg : errors)
        if (!msg.empty()) throw mpv::Error(msg);

    mpv::Report rep;
    rep.command = "table";
    append_common_meta(rep, rc, cfg);
    rep.meta.emplace_back("c_grid", grid_str.front() + " .. " + grid_str.back());
    rep.meta.emplace_back("c_steps", std::to_string(grid.size()));
    rep.meta.emplace_back("n_max", std::to_string(rc.nmax));
    rep.columns = {"c", "n", "a2", "b", "u", "v"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        append_coeff_rows(rep, tables[i], static_cast<int>(mpv::digits10_for_bits(rc.bits)), grid_str[i]);
    emit(rep, rc);
    return 0;
}

template <int (*Cmd)(const RunConfig&), int (*CmdBig)(const RunConfig&)>
int dispatch(const RunConfig& rc) {
    if (rc.bits == 53) return Cmd(rc);
    mpv::set_working_precision(rc.bits);
    return CmdBig(rc);
}

void add_model_flags(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--gamma", rc.gamma, "weight parameter gamma");
    cmd->add_option("--beta", rc.beta, "weight parameter beta");
    cmd->add_option("--tau", rc.tau, "bi-lattice mixing weight");
    cmd->add_option("--lattice", rc.lattice, "lattice: n, shifted, or bilattice");
    cmd->add_option("--nmax", rc.nmax, "highest recurrence index");
}

void add_run_flags(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--precision-bits", rc.bits,
                    "mantissa bits; 53 selects native double");
    cmd->add_option("--rel-tol", rc.rel_tol, "relative tolerance override");
    cmd->add_option("--abs-tol", rc.abs_tol, "absolute tolerance override");
    cmd->add_option("--format", rc.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", rc.seed, "seed for random-sample suites");
    cmd->add_option("--out", rc.out, "write the report to a file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Meixner recurrence coefficients and their "
                 "Painleve V verification suites"};
    app.require_subcommand(1);
    RunConfig rc;

    auto* coeffs = app.add_subcommand(
        "coeffs", "Recurrence table a_n^2, b_n (and u_n, v_n) at one c");
    add_model_flags(coeffs, rc);
    coeffs->add_option("--c", rc.c, "weight parameter c");
    add_run_flags(coeffs, rc);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", rc.suite,
                       "discrete, toda, ode, riccati, backlund, ladder, lincomb, or all");
    verify->add_option("--samples", rc.samples, "random samples per sampled check");
    add_run_flags(verify, rc);

    auto* table = app.add_subcommand("table", "Long-format sweep over a c-grid");
    add_model_flags(table, rc);
    table->add_option("--c", rc.c, "single grid point when no range is given");
    table->add_option("--c-min", rc.c_min, "first grid point");
    table->add_option("--c-max", rc.c_max, "last grid point");
    table->add_option("--c-steps", rc.c_steps, "number of grid points");
    add_run_flags(table, rc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (coeffs->parsed())
            return dispatch<cmd_coeffs<double>, cmd_coeffs<mpv::BigFloat>>(rc);
        if (verify->parsed())
            return dispatch<cmd_verify<double>, cmd_verify<mpv::BigFloat>>(rc);
        return dispatch<cmd_table<double>, cmd_table<mpv::BigFloat>>(rc);
    } catch (const mpv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
