#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "proofread/proofread.hpp"

namespace proofread::cli {

namespace {

using nlohmann::json;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string to_csv(const Table& table) {
    std::string text;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) text += ',';
        text += table.columns[i];
    }
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text += ',';
            text += format_number(row[i]);
        }
        text += '\n';
    }
    return text;
}

json to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json object = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            object[table.columns[i]] = row[i];
        }
        rows.push_back(std::move(object));
    }
    return rows;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    file << contents;
    if (!file) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

struct Output {
    std::string path;
    std::string json_path;
};

void add_output(CLI::App* sub, Output& output) {
    sub->add_option("-o,--output", output.path, "CSV output file (stdout if omitted)");
    sub->add_option("--json", output.json_path, "also write the table as JSON");
}

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

void emit(const Table& table, const Output& output, const std::string& summary,
          const Streams& io) {
    if (!output.json_path.empty()) {
        write_file(output.json_path, to_json(table).dump(2) + "\n");
    }
    if (output.path.empty()) {
        io.out << to_csv(table);
        io.err << summary << '\n';
    } else {
        write_file(output.path, to_csv(table));
        io.out << summary << '\n';
    }
}

// --m / --log-m style count inputs. Exactly one form may be given.
struct Count {
    std::int64_t value = 1;
    double log_value = 0.0;
    CLI::Option* plain = nullptr;
    CLI::Option* log = nullptr;

    [[nodiscard]] bool given() const { return plain->count() > 0 || log->count() > 0; }
    [[nodiscard]] double log_count() const {
        if (log->count() > 0) return log_value;
        return std::log(static_cast<double>(value));
    }
    [[nodiscard]] std::int64_t integer() const {
        if (log->count() > 0) return integer_from_log(log_value);
        return value;
    }
};

void add_count(CLI::App* sub, Count& count, const std::string& name, std::int64_t fallback,
               const std::string& what) {
    count.value = fallback;
    count.log_value = std::log(static_cast<double>(fallback));
    count.plain = sub->add_option("--" + name, count.value, what)->check(CLI::PositiveNumber);
    count.log = sub->add_option("--log-" + name, count.log_value, "natural log of " + what)
                    ->check(CLI::NonNegativeNumber);
    count.plain->excludes(count.log);
}

struct Tau {
    double tau = 1.0;
    double energy = 0.0;
    CLI::Option* tau_opt = nullptr;
    CLI::Option* energy_opt = nullptr;

    [[nodiscard]] double value() const {
        if (energy_opt->count() > 0) return std::exp(energy);
        return tau;
    }
};

void add_tau(CLI::App* sub, Tau& tau, bool required = true) {
    tau.tau_opt = sub->add_option("--tau", tau.tau, "unbinding time");
    tau.energy_opt = sub->add_option("--energy", tau.energy, "binding energy E, tau = e^E");
    tau.tau_opt->excludes(tau.energy_opt);
    if (required) {
        sub->callback([&tau] {
            if (tau.tau_opt->count() == 0 && tau.energy_opt->count() == 0) {
                throw CLI::RequiredError("--tau or --energy");
            }
        });
    }
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw DomainError("--points must be >= 1");
    std::vector<double> grid;
    for (int i = 0; i < points; ++i) {
        grid.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
    }
    return grid;
}

// Prepends values from a JSON config file for every key not already present
// on the command line, so explicit flags win.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string config_path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) return rest;

    std::ifstream file(config_path);
    if (!file) throw DomainError("cannot read config file '" + config_path + "'");
    json config;
    try {
        file >> config;
    } catch (const json::exception& e) {
        throw DomainError("config file '" + config_path + "' is not valid JSON: " + e.what());
    }
    if (!config.is_object()) throw DomainError("config file must hold a JSON object");

    std::set<std::string> present;
    for (const auto& arg : rest) {
        if (arg.rfind("--", 0) == 0) present.insert(arg.substr(2, arg.find('=') - 2));
        if (arg == "-o") present.insert("output");
    }
    // Subcommand tokens precede the first flag.
    std::size_t split = 0;
    while (split < rest.size() && rest[split].rfind("-", 0) != 0) ++split;

    std::vector<std::string> injected;
    for (const auto& [key, value] : config.items()) {
        if (present.count(key) != 0) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) injected.push_back("--" + key);
            continue;
        }
        injected.push_back("--" + key);
        if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ',';
                joined += item.is_string() ? item.get<std::string>() : item.dump();
            }
            injected.push_back(joined);
        } else if (value.is_string()) {
            injected.push_back(value.get<std::string>());
        } else {
            injected.push_back(value.dump());
        }
    }
    std::vector<std::string> merged(rest.begin(), rest.begin() + static_cast<long>(split));
    merged.insert(merged.end(), injected.begin(), injected.end());
    merged.insert(merged.end(), rest.begin() + static_cast<long>(split), rest.end());
    return merged;
}

class Cli {
public:
    Cli(std::ostream& out, std::ostream& err) : io_{out, err} {
        app_.require_subcommand(1);
        app_.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        app_.set_config();  // --config is consumed by merge_config before parsing
        setup_prob();
        setup_tauc();
        setup_sweep();
        setup_figure();
        setup_energy();
        setup_speed();
        setup_flux();
        setup_general();
        setup_simulate();
        setup_verify();
    }

    int run(const std::vector<std::string>& args) {
        auto merged = merge_config(args);
        std::reverse(merged.begin(), merged.end());
        app_.parse(merged);
        return action_();
    }

    CLI::App& app() { return app_; }

private:
    CLI::App* command(CLI::App* parent, const std::string& name, const std::string& help,
                      std::function<int()> action) {
        auto* sub = parent->add_subcommand(name, help);
        sub->parse_complete_callback([this, action = std::move(action)] { action_ = action; });
        return sub;
    }

    void setup_prob() {
        auto* sub = command(&app_, "prob", "response probability 1 - (1 - p)^(M L)", [this] {
            const double value = analytic::response_prob_multi(prob_.tau.value(), prob_.n,
                                                               prob_.m.log_count(),
                                                               prob_.l.log_count());
            io_.out << fmt::format("{}", value) << '\n';
            return kExitOk;
        });
        add_tau(sub, prob_.tau);
        sub->add_option("--n", prob_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(sub, prob_.m, "m", 1, "trials M");
        add_count(sub, prob_.l, "l", 1, "ligands L");
    }

    void setup_tauc() {
        auto* sub = command(&app_, "tauc", "critical unbinding time", [this] {
            const double value =
                analytic::critical_tau(tauc_.n, tauc_.m.log_count(), tauc_.l.log_count());
            io_.out << fmt::format("{}", value) << '\n';
            return kExitOk;
        });
        sub->add_option("--n", tauc_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(sub, tauc_.m, "m", 1, "trials M");
        add_count(sub, tauc_.l, "l", 1, "ligands L");
    }

    void setup_sweep() {
        auto* sub = command(&app_, "sweep", "p_M over a tau or xi grid", [this] { return sweep(); });
        sub->add_option("--n", sweep_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(sub, sweep_.m, "m", 1, "trials M");
        add_count(sub, sweep_.l, "l", 1, "ligands L");
        sub->add_option("--var", sweep_.var, "grid variable")
            ->check(CLI::IsMember({"tau", "xi"}));
        sub->add_option("--min", sweep_.lo, "grid start");
        sub->add_option("--max", sweep_.hi, "grid end");
        sub->add_option("--points", sweep_.points, "grid points")->check(CLI::PositiveNumber);
        sub->add_flag("--log-grid", sweep_.log_grid, "geometric tau grid");
        add_output(sub, sweep_.output);
    }

    int sweep() {
        const auto& s = sweep_;
        const double log_m = s.m.log_count();
        const double log_l = s.l.log_count();
        Table table;
        if (s.var == "tau") {
            table.columns = {"tau", "p_single", "p_multi"};
            std::vector<double> grid;
            if (s.log_grid) {
                for (double u : linspace(std::log(s.lo), std::log(s.hi), s.points)) {
                    grid.push_back(std::exp(u));
                }
            } else {
                grid = linspace(s.lo, s.hi, s.points);
            }
            for (double tau : grid) {
                table.rows.push_back({tau, analytic::response_prob_single(tau, s.n),
                                      analytic::response_prob_multi(tau, s.n, log_m, log_l)});
            }
        } else {
            table.columns = {"xi", "tau", "p_finite", "p_limit"};
            const double tau_c = analytic::critical_tau(s.n, log_m, log_l);
            for (double xi : linspace(s.lo, s.hi, s.points)) {
                const double tau = tau_c * (1.0 + xi * (1.0 + tau_c) / s.n);
                table.rows.push_back({xi, tau, analytic::finite_response_curve(xi, s.n, log_m, log_l),
                                      analytic::limit_response_curve(xi, regime::LogMOrderN{1.0})});
            }
        }
        emit(table, s.output,
             fmt::format("sweep: {} rows over {} in [{}, {}]", table.rows.size(), s.var, s.lo,
                         s.hi),
             io_);
        return kExitOk;
    }

    void setup_figure() {
        auto* figure = app_.add_subcommand("figure", "figure and table data");
        figure->require_subcommand(1);

        auto* fig2 = command(figure, "fig2", "single-trial KPR vs delay model, tau = x N",
                             [this] { return fig2_run(); });
        fig2->add_option("--n", fig2_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        fig2->add_option("--x-min", fig2_.lo, "smallest x")->check(CLI::PositiveNumber);
        fig2->add_option("--x-max", fig2_.hi, "largest x")->check(CLI::PositiveNumber);
        fig2->add_option("--points", fig2_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(fig2, fig2_.output);

        auto* fig3 = command(figure, "fig3", "M-trial KPR vs delay model, tau = x tau_c",
                             [this] { return fig3_run(); });
        fig3->add_option("--n", fig3_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(fig3, fig3_.m, "m", 10, "trials M");
        fig3->add_option("--x-min", fig3_.lo, "smallest x")->check(CLI::PositiveNumber);
        fig3->add_option("--x-max", fig3_.hi, "largest x")->check(CLI::PositiveNumber);
        fig3->add_option("--points", fig3_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(fig3, fig3_.output);

        auto* fig4 = command(figure, "fig4", "limit law of ATP consumption over M trials",
                             [this] { return fig4_run(fig4_); });
        fig4->add_option("--x", fig4_.x, "tau / N")->check(CLI::PositiveNumber);
        fig4->add_option("--m", fig4_.m, "trials M (1..20)")->check(CLI::Range(1, 20));
        fig4->add_option("--points", fig4_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(fig4, fig4_.output);

        auto* fig5 = command(figure, "fig5", "Gaussian flux densities of two ligands",
                             [this] { return fig5_run(); });
        fig5->add_option("--p1", fig5_.p1, "response probability of ligand 1");
        fig5->add_option("--p2", fig5_.p2, "response probability of ligand 2");
        fig5->add_option("--m", fig5_.m, "trials M")->check(CLI::PositiveNumber);
        fig5->add_option("--points", fig5_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(fig5, fig5_.output);

        auto* table1 = command(figure, "table1", "regime summary for M = e^(b N)",
                               [this] { return table1_run(); });
        table1->add_option("--b", table1_.b, "growth rate b")->check(CLI::PositiveNumber);
        table1->add_option("--n", table1_.steps, "values of N")->delimiter(',');
        table1->add_option("--xi", table1_.xi, "xi for the response and time columns");
        add_output(table1, table1_.output);
    }

    int fig2_run() {
        Table table{{"x", "p_kpr_finite", "p_delay_finite", "p_kpr_limit", "p_delay_limit"}, {}};
        const int n = fig2_.n;
        for (double x : linspace(fig2_.lo, fig2_.hi, fig2_.points)) {
            table.rows.push_back({x, analytic::response_prob_single(x * n, n),
                                  analytic::delay_response_prob(x * n, n),
                                  analytic::limit_response_curve(x, regime::MEqualsOne{}),
                                  x / (1.0 + x)});
        }
        emit(table, fig2_.output, fmt::format("fig2: N={}, {} rows", n, table.rows.size()), io_);
        return kExitOk;
    }

    int fig3_run() {
        Table table{{"x", "p_delay_limit", "p_kpr_limit", "p_delay_finite", "p_kpr_finite"}, {}};
        const int n = fig3_.n;
        const std::int64_t m = fig3_.m.integer();
        const double log_m = std::log(static_cast<double>(m));
        const double tau_bar = analytic::delay_critical_tau(n, m);
        const double tau_c = analytic::critical_tau(n, log_m);
        for (double x : linspace(fig3_.lo, fig3_.hi, fig3_.points)) {
            table.rows.push_back({x, analytic::delay_limit_response(x),
                                  analytic::limit_response_curve(x, regime::MConstant{m}),
                                  analytic::delay_response_prob_multi(x * tau_bar, n, m),
                                  analytic::response_prob_multi(x * tau_c, n, log_m)});
        }
        emit(table, fig3_.output,
             fmt::format("fig3: N={}, M={}, {} rows", n, m, table.rows.size()), io_);
        return kExitOk;
    }

    struct LimitOpts {
        double x = 1.0;
        std::int64_t m = 2;
        int points = 401;
        Output output;
    };

    int fig4_run(const LimitOpts& opts) {
        const auto nu = energy::atp_limit_multi(opts.x, opts.m);
        Table table{{"ell", "density", "cdf", "atom_mass"}, {}};
        for (double ell : linspace(0.0, static_cast<double>(opts.m), opts.points)) {
            double atom = 0.0;
            for (const auto& a : nu.atoms()) {
                if (a.location == ell) atom += a.mass;
            }
            table.rows.push_back({ell, nu.density(ell), nu.cdf(ell), atom});
        }
        emit(table, opts.output,
             fmt::format("limit law: M={}, x={}, atom mass at {} = {}", opts.m, opts.x, opts.m,
                         nu.atom_mass()),
             io_);
        return kExitOk;
    }

    int fig5_run() {
        const auto g1 = flux::flux_gaussian_limit_from_probability(fig5_.p1, fig5_.m);
        const auto g2 = flux::flux_gaussian_limit_from_probability(fig5_.p2, fig5_.m);
        const double m = static_cast<double>(fig5_.m);
        const auto density = [&](double j, const flux::GaussianParams& g) {
            const double mean = g.mean / m;
            const double sd = g.std_dev / m;
            const double z = (j - mean) / sd;
            return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
        };
        Table table{{"flux", "density_1", "density_2"}, {}};
        for (double j : linspace(0.0, 1.0, fig5_.points)) {
            table.rows.push_back({j, density(j, g1), density(j, g2)});
        }
        const auto decision = flux::discriminable_probabilities(fig5_.p1, fig5_.p2, fig5_.m);
        emit(table, fig5_.output,
             fmt::format("fig5: separation {:.4f} sigma, discriminable={}", decision.separation,
                         decision.decision),
             io_);
        return kExitOk;
    }

    int table1_run() {
        Table table{{"n", "b", "log_m", "tau_c", "tau_c_limit", "transition_width", "p_finite",
                     "p_limit", "atp_mean", "atp_std", "mean_time_over_tau_m"},
                    {}};
        const double b = table1_.b;
        for (int n : table1_.steps) {
            const double log_m = b * n;
            const double tau_c = analytic::critical_tau(n, log_m);
            const auto limit = std::get<double>(
                analytic::limit_critical_tau(regime::LogMOrderN{b}, n, log_m));
            const double m = std::exp(log_m);
            const auto atp = energy::atp_gaussian_params(tau_c, m);
            table.rows.push_back({static_cast<double>(n), b, log_m, tau_c, limit,
                                  analytic::transition_width(n, tau_c),
                                  analytic::finite_response_curve(table1_.xi, n, log_m),
                                  analytic::limit_response_curve(table1_.xi, regime::LogMOrderN{b}),
                                  atp.mean, atp.std_dev, std::exp(-table1_.xi)});
        }
        emit(table, table1_.output, fmt::format("table1: b={}, {} rows", b, table.rows.size()),
             io_);
        return kExitOk;
    }

    void setup_energy() {
        auto* energy = app_.add_subcommand("energy", "ATP consumption");
        energy->require_subcommand(1);

        auto* pmf = command(energy, "pmf", "ATP pmf over M trials", [this] {
            const auto pmf = energy::atp_pmf_multi(epmf_.tau.value(), epmf_.n, epmf_.m.integer());
            Table table{{"k", "mass"}, {}};
            for (std::int64_t k = pmf.min_support(); k <= pmf.max_support(); ++k) {
                table.rows.push_back({static_cast<double>(k), pmf(k)});
            }
            emit(table, epmf_.output,
                 fmt::format("energy pmf: mean {:.6g}, variance {:.6g}", pmf.mean(),
                             pmf.variance()),
                 io_);
            return kExitOk;
        });
        add_tau(pmf, epmf_.tau);
        pmf->add_option("--n", epmf_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(pmf, epmf_.m, "m", 1, "trials M");
        add_output(pmf, epmf_.output);

        auto* limit = command(energy, "limit", "limit law of ATP / N",
                              [this] { return fig4_run(elimit_); });
        limit->add_option("--x", elimit_.x, "tau / N")->check(CLI::PositiveNumber);
        limit->add_option("--m", elimit_.m, "trials M (1..20)")->check(CLI::Range(1, 20));
        limit->add_option("--points", elimit_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(limit, elimit_.output);

        auto* gauss = command(energy, "gauss", "Gaussian parameters of ATP consumption", [this] {
            const auto g = energy::atp_gaussian_params(egauss_.tau.value(),
                                                       std::exp(egauss_.m.log_count()));
            io_.out << fmt::format("{} {}", g.mean, g.std_dev) << '\n';
            return kExitOk;
        });
        add_tau(gauss, egauss_.tau);
        add_count(gauss, egauss_.m, "m", 1, "trials M");
    }

    void setup_speed() {
        auto* speed = app_.add_subcommand("speed", "response times");
        speed->require_subcommand(1);

        auto* erlang = command(speed, "erlang", "single-trial response-time density", [this] {
            const double tau = serl_.tau.value();
            Table table{{"t", "density"}, {}};
            const double t_max = serl_.t_max > 0.0 ? serl_.t_max
                                                   : 3.0 * speed::erlang_mean(tau, serl_.n);
            for (double t : linspace(0.0, t_max, serl_.points)) {
                table.rows.push_back({t, speed::response_time_pdf_single(t, tau, serl_.n)});
            }
            emit(table, serl_.output,
                 fmt::format("erlang: mean {}", speed::erlang_mean(tau, serl_.n)), io_);
            return kExitOk;
        });
        add_tau(erlang, serl_.tau);
        erlang->add_option("--n", serl_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        erlang->add_option("--t-max", serl_.t_max, "largest t (default 3 x mean)");
        erlang->add_option("--points", serl_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(erlang, serl_.output);

        auto* laplace = command(speed, "laplace", "conditional response-time transform", [this] {
            const double tau = slap_.tau.value();
            const std::int64_t m = slap_.m.integer();
            Table table{{"z", "re", "im"}, {}};
            for (double z : linspace(slap_.lo, slap_.hi, slap_.points)) {
                const auto value =
                    speed::response_time_laplace_multi({z, slap_.imag}, tau, slap_.n, m);
                table.rows.push_back({z, value.real(), value.imag()});
            }
            emit(table, slap_.output,
                 fmt::format("laplace: conditional mean {}",
                             speed::conditional_mean_response_time(tau, slap_.n, m)),
                 io_);
            return kExitOk;
        });
        add_tau(laplace, slap_.tau);
        laplace->add_option("--n", slap_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(laplace, slap_.m, "m", 1, "trials M");
        laplace->add_option("--z-min", slap_.lo, "smallest real part");
        laplace->add_option("--z-max", slap_.hi, "largest real part");
        laplace->add_option("--z-im", slap_.imag, "imaginary part");
        laplace->add_option("--points", slap_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(laplace, slap_.output);

        auto* limits = command(speed, "limits", "limiting transform and densities", [this] {
            Table table{{"t", "uniform_density", "exponential_density", "limit_laplace_re"}, {}};
            for (double t : linspace(0.0, slim_.t_max, slim_.points)) {
                table.rows.push_back(
                    {t, speed::response_time_limit_pdf(t, speed::UniformBranch{}),
                     speed::response_time_limit_pdf(t, speed::ExponentialBranch{slim_.xi}),
                     speed::response_time_limit_laplace({t, 0.0}, slim_.xi).real()});
            }
            emit(table, slim_.output, fmt::format("speed limits: xi={}", slim_.xi), io_);
            return kExitOk;
        });
        limits->add_option("--xi", slim_.xi, "scaling parameter xi");
        limits->add_option("--t-max", slim_.t_max, "largest t or zeta")->check(CLI::PositiveNumber);
        limits->add_option("--points", slim_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(limits, slim_.output);
    }

    void setup_flux() {
        auto* flux = app_.add_subcommand("flux", "response counts and discrimination");
        flux->require_subcommand(1);

        auto* pmf = command(flux, "pmf", "binomial pmf of the number of responses", [this] {
            const auto pmf = flux::response_count_pmf(fpmf_.tau.value(), fpmf_.n,
                                                      fpmf_.m.integer());
            Table table{{"k", "mass"}, {}};
            for (std::int64_t k = 0; k <= pmf.max_support(); ++k) {
                table.rows.push_back({static_cast<double>(k), pmf(k)});
            }
            const auto g = flux::flux_gaussian_limit(fpmf_.tau.value(), fpmf_.n, fpmf_.m.integer());
            emit(table, fpmf_.output,
                 fmt::format("flux pmf: mean {}, std {}", g.mean, g.std_dev), io_);
            return kExitOk;
        });
        add_tau(pmf, fpmf_.tau);
        pmf->add_option("--n", fpmf_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(pmf, fpmf_.m, "m", 1, "trials M");
        add_output(pmf, fpmf_.output);

        auto* poisson = command(flux, "poisson", "binomial vs Poisson(e^x) near tau_c", [this] {
            const int n = fpoi_.n;
            const std::int64_t m = fpoi_.m.integer();
            const double tau_c = analytic::critical_tau(n, std::log(static_cast<double>(m)));
            const double tau = tau_c * (1.0 + fpoi_.x * (1.0 + tau_c) / n);
            const double rate = flux::flux_poisson_limit(fpoi_.x);
            Table table{{"k", "binomial", "poisson"}, {}};
            double tv = 0.0;
            for (std::int64_t k = 0; k <= fpoi_.k_max; ++k) {
                const double bin = std::exp(flux::response_count_log_pmf(k, tau, n, m));
                const double poi = std::exp(flux::poisson_log_pmf(k, rate));
                tv += 0.5 * std::abs(bin - poi);
                table.rows.push_back({static_cast<double>(k), bin, poi});
            }
            emit(table, fpoi_.output,
                 fmt::format("poisson: rate {}, total variation over shown range {}", rate, tv),
                 io_);
            return kExitOk;
        });
        poisson->add_option("--n", fpoi_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(poisson, fpoi_.m, "m", 1, "trials M");
        poisson->add_option("--x", fpoi_.x, "offset x");
        poisson->add_option("--k-max", fpoi_.k_max, "largest k")->check(CLI::NonNegativeNumber);
        add_output(poisson, fpoi_.output);

        auto* disc = command(flux, "discriminate", "flux discrimination test", [this] {
            flux::Discrimination result{};
            if (fdis_.p1_opt->count() > 0 || fdis_.p2_opt->count() > 0) {
                result = flux::discriminable_probabilities(fdis_.p1, fdis_.p2, fdis_.m.integer(),
                                                           fdis_.margin);
            } else {
                result = flux::discriminable(fdis_.tau1, fdis_.tau2, fdis_.n, fdis_.m.integer(),
                                             fdis_.margin);
            }
            io_.out << fmt::format("{} {}", result.decision ? "true" : "false",
                                   result.separation)
                    << '\n';
            return kExitOk;
        });
        disc->add_option("--tau1", fdis_.tau1, "unbinding time of ligand 1");
        disc->add_option("--tau2", fdis_.tau2, "unbinding time of ligand 2");
        fdis_.p1_opt = disc->add_option("--p1", fdis_.p1, "response probability of ligand 1");
        fdis_.p2_opt = disc->add_option("--p2", fdis_.p2, "response probability of ligand 2");
        disc->add_option("--n", fdis_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(disc, fdis_.m, "m", 1, "trials M");
        disc->add_option("--margin", fdis_.margin, "required separation in sigmas (default 3)")
            ->check(CLI::PositiveNumber);
    }

    void setup_general() {
        auto* general = app_.add_subcommand("general", "state-dependent rates");
        general->require_subcommand(1);

        auto add_schedule = [this](CLI::App* sub) {
            sub->add_option("--schedule", gen_.b, "rate multipliers b_k, comma separated")
                ->delimiter(',')
                ->required();
        };

        auto* prob = command(general, "prob", "G_N(tau) and p_M", [this] {
            const auto schedule = make_schedule();
            const double tau = gen_.tau.value();
            const double g = general::response_prob_general(schedule, tau);
            const double pm = log1m_pow(general::log_response_prob_general(schedule, tau),
                                        gen_.m.log_count());
            io_.out << fmt::format("{} {}", g, pm) << '\n';
            return kExitOk;
        });
        add_schedule(prob);
        add_tau(prob, gen_.tau);
        add_count(prob, gen_.m, "m", 1, "trials M");

        auto* tauc = command(general, "tauc", "critical time with state-dependent rates", [this] {
            io_.out << fmt::format("{}", general::critical_tau_general(make_schedule(),
                                                                      gen_.m.log_count()))
                    << '\n';
            return kExitOk;
        });
        add_schedule(tauc);
        add_count(tauc, gen_.m, "m", 1, "trials M");

        auto* limit = command(general, "limit", "limit curve for a discrete rate measure", [this] {
            const general::DiscreteMeasure measure{glim_.locations, glim_.weights};
            Table table{{"xi", "p_limit", "t_bar", "d"}, {}};
            for (double xi : linspace(glim_.lo, glim_.hi, glim_.points)) {
                const auto result = general::limit_response_general(xi, measure, glim_.b);
                table.rows.push_back({xi, result.prob, result.t_bar, result.d});
            }
            emit(table, glim_.output,
                 fmt::format("general limit: T = {}",
                             general::limit_critical_tau_general(measure, glim_.b)),
                 io_);
            return kExitOk;
        });
        limit->add_option("--locations", glim_.locations, "atom locations x_i")
            ->delimiter(',')
            ->required();
        limit->add_option("--weights", glim_.weights, "atom weights w_i")
            ->delimiter(',')
            ->required();
        limit->add_option("--b", glim_.b, "growth rate b")->check(CLI::PositiveNumber);
        limit->add_option("--xi-min", glim_.lo, "smallest xi");
        limit->add_option("--xi-max", glim_.hi, "largest xi");
        limit->add_option("--points", glim_.points, "grid points")->check(CLI::PositiveNumber);
        add_output(limit, glim_.output);
    }

    general::RateSchedule make_schedule() const {
        general::RateSchedule schedule{gen_.b, 1.0};
        schedule.validate();
        return schedule;
    }

    void setup_simulate() {
        auto* sub = command(&app_, "simulate", "Monte Carlo campaign", [this] { return simulate(); });
        add_tau(sub, sim_.tau);
        sub->add_option("--n", sim_.n, "proofreading steps N")->check(CLI::PositiveNumber);
        add_count(sub, sim_.m, "m", 1, "trials M");
        sub->add_option("--ligands", sim_.ligands, "ligands to simulate")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", sim_.seed, "RNG seed")->envname("PROOFREAD_SEED");
        sub->add_option("--workers", sim_.workers, "threads (0 = all cores)");
        sub->add_option("--schedule", sim_.schedule, "rate multipliers b_k")->delimiter(',');
        sub->add_flag("--no-times", sim_.no_times, "skip holding-time sampling");
        sub->add_option("--times-output", sim_.times_path,
                        "write conditional response times, one per line");
        add_output(sub, sim_.output);
    }

    int simulate() {
        const std::int64_t m = sim_.m.integer();
        montecarlo::SimConfig config{ModelParams::with_trials(sim_.tau.value(), sim_.n, m),
                                     sim_.ligands,
                                     sim_.seed,
                                     sim_.workers,
                                     std::nullopt,
                                     !sim_.no_times};
        if (!sim_.schedule.empty()) {
            config.schedule = general::RateSchedule{sim_.schedule, 1.0};
        }
        const auto summary = montecarlo::run_campaign(config);
        Table table{{"value", "atp_count", "response_count"}, {}};
        const std::size_t rows =
            std::max(summary.atp_histogram.size(), summary.response_count_histogram.size());
        for (std::size_t i = 0; i < rows; ++i) {
            const auto at = [i](const std::vector<std::uint64_t>& h) {
                return i < h.size() ? static_cast<double>(h[i]) : 0.0;
            };
            table.rows.push_back({static_cast<double>(i), at(summary.atp_histogram),
                                  at(summary.response_count_histogram)});
        }
        if (!sim_.times_path.empty()) {
            std::string text;
            for (double t : summary.conditional_time_samples) text += format_number(t) + "\n";
            write_file(sim_.times_path, text);
        }
        emit(table, sim_.output,
             fmt::format("simulate: response rate {} (95% CI [{}, {}]) over {} ligands, seed {}",
                         summary.response_rate, summary.interval.low, summary.interval.high,
                         summary.n_ligands, sim_.seed),
             io_);
        return kExitOk;
    }

    void setup_verify() {
        auto* sub = command(&app_, "verify", "run the acceptance suite", [this] {
            acceptance::SuiteOptions options;
            options.seed = ver_.seed;
            options.workers = ver_.workers;
            options.only.insert(ver_.only.begin(), ver_.only.end());
            options.on_result = [this](const acceptance::CriterionResult& r) {
                io_.out << acceptance::format_line(r) << std::endl;
            };
            const auto results = acceptance::run_all(options);
            const auto failed = std::count_if(results.begin(), results.end(),
                                              [](const auto& r) { return !r.passed; });
            io_.out << fmt::format("verify: {}/{} passed", results.size() - failed, results.size())
                    << '\n';
            return failed == 0 ? kExitOk : kExitVerifyFailed;
        });
        sub->add_option("--seed", ver_.seed, "RNG seed")->envname("PROOFREAD_SEED");
        sub->add_option("--workers", ver_.workers, "threads (0 = all cores)");
        sub->add_option("--only", ver_.only, "criterion ids to run")->delimiter(',');
    }

    struct ProbOpts {
        Tau tau;
        int n = 1;
        Count m;
        Count l;
    } prob_;
    struct TaucOpts {
        int n = 1;
        Count m;
        Count l;
    } tauc_;
    struct SweepOpts {
        int n = 10;
        Count m;
        Count l;
        std::string var = "tau";
        double lo = 0.1;
        double hi = 10.0;
        int points = 100;
        bool log_grid = false;
        Output output;
    } sweep_;
    struct Fig2Opts {
        int n = 200;
        double lo = 0.05;
        double hi = 5.0;
        int points = 200;
        Output output;
    } fig2_;
    struct Fig3Opts {
        int n = 10;
        Count m;
        double lo = 0.05;
        double hi = 5.0;
        int points = 200;
        Output output;
    } fig3_;
    LimitOpts fig4_;
    struct Fig5Opts {
        double p1 = 0.25;
        double p2 = 0.75;
        std::int64_t m = 50;
        int points = 501;
        Output output;
    } fig5_;
    struct Table1Opts {
        double b = 0.5;
        std::vector<int> steps{20, 40, 80, 160, 320};
        double xi = 0.0;
        Output output;
    } table1_;
    struct EnergyPmfOpts {
        Tau tau;
        int n = 10;
        Count m;
        Output output;
    } epmf_;
    LimitOpts elimit_;
    struct EnergyGaussOpts {
        Tau tau;
        Count m;
    } egauss_;
    struct ErlangOpts {
        Tau tau;
        int n = 10;
        double t_max = 0.0;
        int points = 200;
        Output output;
    } serl_;
    struct LaplaceOpts {
        Tau tau;
        int n = 10;
        Count m;
        double lo = 0.0;
        double hi = 1.0;
        double imag = 0.0;
        int points = 101;
        Output output;
    } slap_;
    struct SpeedLimitOpts {
        double xi = 0.0;
        double t_max = 3.0;
        int points = 301;
        Output output;
    } slim_;
    struct FluxPmfOpts {
        Tau tau;
        int n = 10;
        Count m;
        Output output;
    } fpmf_;
    struct FluxPoissonOpts {
        int n = 30;
        Count m;
        double x = 0.0;
        std::int64_t k_max = 60;
        Output output;
    } fpoi_;
    struct FluxDiscOpts {
        double tau1 = 1.0;
        double tau2 = 1.0;
        double p1 = 0.0;
        double p2 = 0.0;
        CLI::Option* p1_opt = nullptr;
        CLI::Option* p2_opt = nullptr;
        int n = 10;
        Count m;
        double margin = flux::kDefaultMarginSigmas;
    } fdis_;
    struct GeneralOpts {
        std::vector<double> b;
        Tau tau;
        Count m;
    } gen_;
    struct GeneralLimitOpts {
        std::vector<double> locations;
        std::vector<double> weights;
        double b = 0.5;
        double lo = -3.0;
        double hi = 3.0;
        int points = 121;
        Output output;
    } glim_;
    struct SimulateOpts {
        Tau tau;
        int n = 10;
        Count m;
        std::uint64_t ligands = 100'000;
        std::uint64_t seed = 0;
        unsigned workers = 0;
        std::vector<double> schedule;
        bool no_times = false;
        std::string times_path;
        Output output;
    } sim_;
    struct VerifyOpts {
        std::uint64_t seed = acceptance::SuiteOptions{}.seed;
        unsigned workers = 0;
        std::vector<int> only;
    } ver_;

    Streams io_;
    CLI::App app_{"Stochastic kinetic proofreading toolkit", "proofread"};
    std::function<int()> action_;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Cli cli(out, err);
    try {
        return cli.run(args);
    } catch (const CLI::CallForHelp&) {
        out << cli.app().help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << cli.app().help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
}

}  // namespace proofread::cli
