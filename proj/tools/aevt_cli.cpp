#include "aevt/errors.hpp"
#include "aevt/problems.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace aevt;

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kConfigInvalid = 2,
    kCapExceeded = 3,
    kNotCovered = 4,
    kStateEscape = 5,
    kMaxIterExceeded = 6,
    kNoContraction = 7,
    kDivergentRollout = 8,
    kDegenerateDiscount = 9,
    kDomainInset = 10,
    kIncompatible = 11,
};

int exit_code(const Error& e) {
    const std::string k = e.kind();
    if (k == "ConfigInvalid") return kConfigInvalid;
    if (k == "CapExceeded") return kCapExceeded;
    if (k == "NotCovered") return kNotCovered;
    if (k == "StateEscape") return kStateEscape;
    if (k == "MaxIterExceeded") return kMaxIterExceeded;
    if (k == "NoContraction") return kNoContraction;
    if (k == "DivergentRollout") return kDivergentRollout;
    if (k == "DegenerateDiscount") return kDegenerateDiscount;
    if (k == "DomainInset") return kDomainInset;
    return kIncompatible;
}

struct Overrides {
    std::optional<std::uint64_t> k, cap;
    std::optional<unsigned> workers;
    std::optional<std::string> output, format;
};

struct Run {
    std::string command;
    json config;
    json params;
    std::uint64_t k = 4;
    std::uint64_t cap = kDefaultPointCap;
    unsigned workers = 1;
    std::string output;
    std::string format = "json";
};

struct Report {
    json result = json::object();
    json guarantee = json::object();
    std::function<void(std::ostream&)> csv;
};

Rational param_rational(const Run& r, const char* key, const Rational& dflt) {
    return r.params.contains(key) ? rational_from_json(r.params.at(key), std::string("params.") + key) : dflt;
}

std::uint64_t param_natural(const Run& r, const char* key, std::uint64_t dflt) {
    return r.params.contains(key) ? natural_from_json(r.params.at(key), std::string("params.") + key) : dflt;
}

json guarantee(const std::string& statement, const Rational& lhs, const Rational& rhs) {
    return {{"statement", statement}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
}

json member_json(const PWLFunction& f) {
    json grid = json::array(), vals = json::array();
    for (const auto& p : f.grid()) grid.push_back(to_json(p));
    for (const auto& v : f.values()) vals.push_back(to_json(v));
    return {{"grid", grid}, {"values", vals}};
}

json net_params_json(const NetParams& p) {
    return {{"k_grid", p.k_grid},
            {"k_val", p.k_val},
            {"grid_radius", to_json(p.grid_radius)},
            {"level_step", to_json(p.level_step)},
            {"error_bound", to_json(p.error_bound)},
            {"count_bound", p.count_bound.get_str()}};
}

const json& problem(const Run& r) { return require(r.config, "problem", "config"); }

LipschitzSpaceDesc policy_space(const Run& r, const BoxSpace& X) {
    json ps = r.params.contains("policy_space") ? r.params.at("policy_space") : json::object();
    require_keys(ps, {"lip", "bound"}, "params.policy_space");
    return {X, ps.contains("lip") ? rational_from_json(ps.at("lip"), "params.policy_space.lip") : Rational(1),
            ps.contains("bound") ? rational_from_json(ps.at("bound"), "params.policy_space.bound") : Rational(1), 1};
}

Report run_net(const Run& r) {
    require_keys(r.params, {"limit"}, "params");
    auto space = space_from_json(problem(r), "problem");
    FunctionNet net = enumerate_net(space, r.k, r.cap);
    const std::size_t limit = param_natural(r, "limit", 10);
    Report rep;
    rep.result = {{"net_size", net.size()},
                  {"precision", to_json(net.precision())},
                  {"params", net_params_json(net.params())},
                  {"grid", json::array()},
                  {"members", json::array()}};
    for (const auto& p : net.grid()) rep.result["grid"].push_back(to_json(p));
    for (std::size_t i = 0; i < std::min(limit, net.size()); ++i) {
        json vals = json::array();
        for (const auto& v : net.member(i).values()) vals.push_back(to_json(v));
        rep.result["members"].push_back(vals);
    }
    rep.guarantee = guarantee("every f in F is within error_bound <= precision of a member",
                              net.params().error_bound, net.precision());
    rep.csv = [net, limit](std::ostream& os) {
        os << "member";
        for (std::size_t g = 0; g < net.grid().size(); ++g) os << ",v" << g;
        os << "\n";
        for (std::size_t i = 0; i < std::min(limit, net.size()); ++i) {
            os << i;
            for (const auto& v : net.member(i).values()) os << "," << v.to_string();
            os << "\n";
        }
    };
    return rep;
}

Report run_evt(const Run& r) {
    require_keys(r.params, {"sense"}, "params");
    const json& p = problem(r);
    require_keys(p, {"space", "functional"}, "problem");
    auto space = space_from_json(require(p, "space", "problem"), "problem.space");
    Functional J = functional_from_json(require(p, "functional", "problem"), space, "problem.functional");
    std::string sense = r.params.value("sense", "inf");
    if (sense != "inf" && sense != "sup") throw ConfigInvalid("params.sense must be \"inf\" or \"sup\"");
    ExtremumResult res =
        sense == "inf" ? approx_inf(J, space, r.k, r.cap, r.workers) : approx_sup(J, space, r.k, r.cap, r.workers);
    const Rational slack = Rational(1) / Rational(r.k);
    Report rep;
    rep.result = {{"sense", sense},
                  {"value", to_json(res.value)},
                  {"member_index", res.member_index},
                  {"k", res.k},
                  {"net_size", res.net_size},
                  {"net_precision", to_json(res.net_precision)},
                  {"params", net_params_json(res.params)},
                  {"member", member_json(res.member)}};
    rep.guarantee = sense == "inf" ? guarantee("value - 1/k <= J[f] for every f in F", res.value - slack, res.value)
                                   : guarantee("J[f] <= value + 1/k for every f in F", res.value, res.value + slack);
    rep.csv = [res](std::ostream& os) {
        os << "value,member_index,k,net_size\n"
           << res.value.to_string() << "," << res.member_index << "," << res.k << "," << res.net_size << "\n";
    };
    return rep;
}

Report run_optctrl(const Run& r) {
    require_keys(r.params, {"policy_space", "steps"}, "params");
    OCProblem p = oc_problem_from_json(problem(r), "problem");
    auto pspace = policy_space(r, p.X);
    ExtremumResult res = optimize_policy(p, pspace, r.k, r.cap, r.workers);
    Trajectory tr = integrate(p, res.member, param_natural(r, "steps", 64));
    Report rep;
    rep.result = {{"value", to_json(res.value)},
                  {"member_index", res.member_index},
                  {"net_size", res.net_size},
                  {"net_precision", to_json(res.net_precision)},
                  {"policy", member_json(res.member)},
                  {"trajectory_error_bound", to_json(tr.error_bound)},
                  {"trajectory_steps", tr.steps},
                  {"endpoint", to_json(tr.states.back())}};
    rep.guarantee = guarantee("value - 1/k <= J[u] for every policy u in the policy space",
                              res.value - Rational(1) / Rational(r.k), res.value);
    rep.csv = [tr](std::ostream& os) { write_trajectory_csv(os, tr); };
    return rep;
}

std::shared_ptr<const PointList> state_grid(const Run& r, const BoxSpace& X) {
    return std::make_shared<const PointList>(regular_partition(X, param_natural(r, "grid_k", 4), r.cap).points);
}

VIResult run_vi(const Run& r, const DPProblem& p) {
    auto grid = state_grid(r, p.X);
    ValueTable V0 = ValueTable::constant(grid, param_rational(r, "v0", 0), p.value_lip);
    return value_iteration(p, V0, param_rational(r, "eps", Rational(1, 256)), r.k);
}

json table_json(const ValueTable& V) {
    json rows = json::array();
    for (std::size_t i = 0; i < V.size(); ++i) rows.push_back({{"x", to_json((*V.grid)[i])}, {"v", to_json(V.values[i])}});
    return rows;
}

Report run_dp_vi(const Run& r) {
    require_keys(r.params, {"eps", "grid_k", "v0"}, "params");
    DPProblem p = dp_problem_from_json(problem(r), "problem");
    VIResult vi = run_vi(r, p);
    Report rep;
    rep.result = {{"n", vi.n},
                  {"d", to_json(vi.d)},
                  {"slack", to_json(vi.slack)},
                  {"bound", to_json(vi.bound)},
                  {"value_lip", to_json(p.value_lip)},
                  {"values", table_json(vi.V)}};
    rep.guarantee = guarantee("sup over the grid of |V_n - V*| <= bound", vi.bound, vi.bound);
    rep.csv = [vi](std::ostream& os) { write_value_table_csv(os, vi.V); };
    return rep;
}

Report run_policy_relaxed(const Run& r) {
    require_keys(r.params, {"eps", "grid_k", "v0", "policy_space"}, "params");
    DPProblem p = dp_problem_from_json(problem(r), "problem");
    VIResult vi = run_vi(r, p);
    auto pspace = policy_space(r, p.X);
    ExtremumResult res = relaxed_policy_opt(p, vi.V, pspace, r.k, r.cap, r.workers);
    Report rep;
    rep.result = {{"value", to_json(res.value)},
                  {"member_index", res.member_index},
                  {"net_size", res.net_size},
                  {"vi_n", vi.n},
                  {"vi_bound", to_json(vi.bound)},
                  {"policy", member_json(res.member)}};
    rep.guarantee = guarantee("J[u] <= value + 1/k for every policy u in the policy space", res.value,
                              res.value + Rational(1) / Rational(r.k));
    rep.csv = [res](std::ostream& os) {
        os << "value,member_index,net_size\n"
           << res.value.to_string() << "," << res.member_index << "," << res.net_size << "\n";
    };
    return rep;
}

double fit_quadratic(const adp::ValueTable<double>& V) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < V.values.size(); ++i) {
        double x = V.grid.point(i)(0);
        num += V.values[i] * x * x;
        den += x * x * x * x;
    }
    return num / den;
}

json trace_json(const std::vector<adp::TraceRow<double>>& trace) {
    json rows = json::array();
    for (const auto& t : trace) rows.push_back({{"iter", t.iter}, {"sup_change", t.change}, {"residual", t.residual}});
    return rows;
}

Report run_adp_vi(const Run& r) {
    require_keys(r.params, {"tol", "max_iter"}, "params");
    ScalarLQ d = scalar_lq_from_json(problem(r), "problem");
    auto p = make_adp_problem(d);
    const double tol = param_rational(r, "tol", Rational(1, 10000)).to_double();
    auto run = adp::vi_run(p, tol, param_natural(r, "max_iter", 500), r.k);
    const double P = riccati_root(d), fit = fit_quadratic(run.V);
    Report rep;
    rep.result = {{"iterations", run.iterations}, {"residual", run.residual}, {"value_coefficient", fit},
                  {"riccati_root", P},            {"trace", trace_json(run.trace)}};
    rep.guarantee = {{"statement", "HJB residual on the grid"}, {"lhs", run.residual}, {"rhs", 5 * tol}};
    rep.csv = [run](std::ostream& os) { adp::write_trace_csv(os, run.trace); };
    return rep;
}

Report run_adp_pi(const Run& r) {
    require_keys(r.params, {"tol", "horizon", "u0_gain", "max_iter", "divergence_bound"}, "params");
    ScalarLQ d = scalar_lq_from_json(problem(r), "problem");
    auto p = make_adp_problem(d);
    const double tol = param_rational(r, "tol", Rational(1, 10000)).to_double();
    const double gain = param_rational(r, "u0_gain", 0).to_double();
    auto grid = p.state_grid();
    auto u0 = adp::policy_from<double>(grid, [gain](const Vec<double>& x) { return Vec<double>(-gain * x); });
    auto run = adp::pi_run(p, u0, param_natural(r, "horizon", 200), tol, r.k, param_natural(r, "max_iter", 100),
                           param_rational(r, "divergence_bound", 1'000'000'000).to_double());
    Report rep;
    rep.result = {{"iterations", run.iterations},
                  {"rollout_tail", run.tail},
                  {"value_coefficient", fit_quadratic(run.V)},
                  {"riccati_root", riccati_root(d)},
                  {"trace", trace_json(run.trace)}};
    rep.guarantee = {{"statement", "rollout tail sup|V_H - V_{H-1}|"}, {"lhs", run.tail}, {"rhs", tol}};
    rep.csv = [run](std::ostream& os) { adp::write_trace_csv(os, run.trace); };
    return rep;
}

Report run_heydari(const Run& r) {
    require_keys(r.params, {"x", "u_init", "iters", "theta", "fd_step", "tol", "max_iter"}, "params");
    ScalarLQ d = scalar_lq_from_json(problem(r), "problem");
    auto p = make_adp_problem(d);
    const double tol = param_rational(r, "tol", Rational(1, 10000)).to_double();
    auto vi = adp::vi_run(p, tol, param_natural(r, "max_iter", 500), r.k);
    const double x = param_rational(r, "x", Rational(1, 2)).to_double();
    const double theta = param_rational(r, "theta", 1).to_double();
    const double fd = r.params.contains("fd_step") ? param_rational(r, "fd_step", 0).to_double() : vi.V.grid.step / 2;
    Vec<double> xv = Vec<double>::Constant(1, x), u0 = Vec<double>::Constant(1, param_rational(r, "u_init", 0).to_double());
    auto res = adp::heydari_iterate(p, vi.V, xv, u0, param_natural(r, "iters", 200), fd, theta);
    const double P = riccati_root(d), a = d.a.to_double(), b = d.b.to_double(), R = d.R.to_double();
    const double ustar = -a * b * P / (R + b * b * P) * x;
    auto net_u = adp::best_control(p, vi.V, adp::control_net<double>(p.U, r.k), xv).first;
    Report rep;
    rep.result = {{"u", res.u(0)},          {"contraction_ratio", res.ratio}, {"last_step", res.last_step},
                  {"iterations", res.iterations}, {"net_argmin_u", net_u(0)}, {"riccati_u", ustar}};
    rep.guarantee = {{"statement", "empirical contraction ratio < 1"}, {"lhs", res.ratio}, {"rhs", 1}};
    rep.csv = [res, net_u](std::ostream& os) {
        os << "u,contraction_ratio,last_step,net_argmin_u\n"
           << res.u(0) << "," << res.ratio << "," << res.last_step << "," << net_u(0) << "\n";
    };
    return rep;
}

Report run_mollify(const Run& r) {
    require_keys(r.params, {"quad_points", "points"}, "params");
    const json& pj = problem(r);
    require_keys(pj, {"function", "domain"}, "problem");
    BoxSpace D = box_from_json(require(pj, "domain", "problem"), "problem.domain");
    auto fn = scalar_field_from_json(require(pj, "function", "problem"), D, "problem.function");
    Mollified fk = mollify(fn.f, fn.lip, fn.bound, D, r.k, param_natural(r, "quad_points", 401));
    Report rep;
    const auto& K = fk.kernel();
    rep.result = {{"a", to_json(K.a)}, {"quad_tol", to_json(K.quad_tol)}, {"nodes", K.nodes.size()}, {"values", json::array()}};
    PointList xs;
    if (r.params.contains("points"))
        for (std::size_t i = 0; i < r.params.at("points").size(); ++i)
            xs.push_back(point_from_json(r.params.at("points")[i], "params.points[" + std::to_string(i) + "]"));
    else
        xs.push_back(D.center);
    Rational worst(0), worst_err(0);
    std::vector<std::tuple<Point, MollifiedValue, Rational>> rows;
    for (const auto& x : xs) {
        MollifiedValue v = fk.eval(x);
        Rational fx = fn.f(x);
        worst = max(worst, abs(v.value - fx));
        worst_err = max(worst_err, v.error);
        rep.result["values"].push_back(
            {{"x", to_json(x)}, {"f", to_json(fx)}, {"f_k", to_json(v.value)}, {"error", to_json(v.error)}});
        rows.emplace_back(x, v, fx);
    }
    rep.guarantee = guarantee("max |f_k(x) - f(x)| <= L/k", worst, fn.lip / Rational(r.k));
    rep.csv = [rows](std::ostream& os) {
        os << "x,f,f_k,error\n";
        for (const auto& [x, v, fx] : rows)
            os << x(0).to_string() << "," << fx.to_string() << "," << v.value.to_string() << "," << v.error.to_string()
               << "\n";
    };
    return rep;
}

Report run_brouwer(const Run& r) {
    require_keys(r.params, {"precisions", "horizon"}, "params");
    const json& pj = problem(r);
    require_keys(pj, {"one_index"}, "problem");
    std::optional<std::uint64_t> idx;
    if (pj.contains("one_index") && !pj.at("one_index").is_null())
        idx = natural_from_json(pj.at("one_index"), "problem.one_index");
    if (idx && *idx == 0) throw ConfigInvalid("problem.one_index starts at 1");
    auto bc = bc_reals(BrouwerSequence(idx));
    std::vector<std::uint64_t> precisions{4, 1u << 22};
    if (r.params.contains("precisions")) {
        precisions.clear();
        for (const auto& p : r.params.at("precisions")) precisions.push_back(natural_from_json(p, "params.precisions"));
    }
    const std::uint64_t horizon = param_natural(r, "horizon", 20);
    Report rep;
    rep.result = {{"runs", json::array()}};
    std::vector<std::pair<SwitchedRun, TwoWellResult>> rows;
    for (auto prec : precisions) {
        if (prec < 4 * r.k) throw ConfigInvalid("each precision must be at least 4k");
        SwitchedRun s = switched_sim(bc.b, bc.c, prec, horizon);
        TwoWellResult t = two_well_min(bc.b, bc.c, r.k, prec);
        rep.result["runs"].push_back({{"precision", prec},
                                      {"b", to_json(s.b_approx)},
                                      {"c", to_json(s.c_approx)},
                                      {"policy", s.policy},
                                      {"cost", to_json(s.cost)},
                                      {"two_well_value", to_json(t.value)},
                                      {"two_well_argmin", to_json(t.argmin)}});
        rows.emplace_back(std::move(s), t);
    }
    Rational spread(0);
    for (const auto& a : rows)
        for (const auto& b : rows) spread = max(spread, abs(a.second.value - b.second.value));
    rep.guarantee = guarantee("two-well values agree across precisions within 2/k", spread, Rational(2) / Rational(r.k));
    rep.csv = [rows](std::ostream& os) {
        os << "precision,first_action,cost,two_well_value\n";
        for (const auto& [s, t] : rows)
            os << s.precision << "," << s.policy.front() << "," << s.cost.to_string() << "," << t.value.to_string() << "\n";
    };
    return rep;
}

const std::map<std::string, Report (*)(const Run&)> kCommands = {
    {"net", run_net},         {"evt", run_evt},           {"optctrl", run_optctrl},
    {"dp-vi", run_dp_vi},     {"policy-relaxed", run_policy_relaxed},
    {"adp-vi", run_adp_vi},   {"adp-pi", run_adp_pi},     {"heydari", run_heydari},
    {"mollify", run_mollify}, {"brouwer", run_brouwer},
};

Run load(const std::string& command, const std::string& path, const Overrides& ov) {
    Run r;
    r.command = command;
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config " + path);
    try {
        r.config = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(r.config, {"schema", "command", "problem", "params", "k", "cap", "workers", "output"}, "config");
    if (require(r.config, "schema", "config") != 1) throw ConfigInvalid("config.schema must be 1");
    if (r.config.contains("command") && r.config.at("command") != command)
        throw ConfigInvalid("config.command does not match the subcommand");
    r.params = r.config.value("params", json::object());
    if (!r.params.is_object()) throw ConfigInvalid("config.params must be an object");
    if (r.config.contains("k")) r.k = natural_from_json(r.config.at("k"), "config.k");
    if (r.config.contains("cap")) r.cap = natural_from_json(r.config.at("cap"), "config.cap");
    if (r.config.contains("workers"))
        r.workers = static_cast<unsigned>(natural_from_json(r.config.at("workers"), "config.workers"));
    if (r.config.contains("output")) {
        const json& o = r.config.at("output");
        require_keys(o, {"path", "format"}, "config.output");
        r.output = o.value("path", "");
        r.format = o.value("format", "json");
    }
    if (ov.k) r.k = *ov.k;
    if (ov.cap) r.cap = *ov.cap;
    if (ov.workers) r.workers = *ov.workers;
    if (ov.output) r.output = *ov.output;
    if (ov.format) r.format = *ov.format;
    if (r.k == 0) throw ConfigInvalid("k must be >= 1");
    if (r.format != "json" && r.format != "csv") throw ConfigInvalid("format must be json or csv");
    return r;
}

void emit(const Run& r, const std::string& text) {
    if (r.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(r.output);
    if (!out) throw ConfigInvalid("cannot write " + r.output);
    out << text;
}

int execute(const std::string& command, const std::string& path, const Overrides& ov) {
    const auto start = std::chrono::steady_clock::now();
    Run r = load(command, path, ov);
    Report rep = kCommands.at(command)(r);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    if (r.format == "csv") {
        rep.csv(os);
    } else {
        json inputs = r.config;
        inputs["k"] = r.k;
        inputs["cap"] = r.cap;
        inputs["workers"] = r.workers;
        json report = {{"schema", 1},
                       {"command", command},
                       {"inputs", inputs},
                       {"result", rep.result},
                       {"guarantee", rep.guarantee},
                       {"timing", {{"wall_seconds", wall}}}};
        os << report.dump(2) << "\n";
    }
    emit(r, os.str());
    return kOk;
}

void print_error(const std::string& kind, const std::string& message, json extra = json::object()) {
    json e = {{"error", kind}, {"message", message}};
    e.update(extra);
    std::cerr << e.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate extremum search over Lipschitz function spaces"};
    app.require_subcommand(1);
    std::string config;
    Overrides ov;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, _] : kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("-c,--config", config, "JSON config file")->required();
        sub->add_option("--k", ov.k, "precision k");
        sub->add_option("--cap", ov.cap, "enumeration cap");
        sub->add_option("--workers", ov.workers, "worker threads");
        sub->add_option("-o,--output", ov.output, "report path (stdout when absent)");
        sub->add_option("--format", ov.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        subs[name] = sub;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("ConfigInvalid", e.what());
        return kConfigInvalid;
    }
    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;
    try {
        return execute(command, config, ov);
    } catch (const CapExceeded& e) {
        print_error(e.kind(), e.what(), {{"count_bound", e.count_bound}});
        return exit_code(e);
    } catch (const MaxIterExceeded& e) {
        print_error(e.kind(), e.what(), {{"residual", e.residual}});
        return exit_code(e);
    } catch (const StateEscape& e) {
        print_error(e.kind(), e.what(), {{"step", e.step}});
        return exit_code(e);
    } catch (const Error& e) {
        print_error(e.kind(), e.what());
        return exit_code(e);
    } catch (const std::invalid_argument& e) {
        print_error("ConfigInvalid", e.what());
        return kConfigInvalid;
    } catch (const std::exception& e) {
        print_error("Internal", e.what());
        return kInternal;
    }
}
