#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "catalog.hpp"
#include "flow.hpp"

namespace np3 {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json cjson(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vjson(const Vec3& v) { return json{v[0], v[1], v[2]}; }

json cvjson(const CVec3& v) { return json{cjson(v[0]), cjson(v[1]), cjson(v[2])}; }

json point_json(const ChartPoint& p) {
    return json{{"chart_id", p.chart_id}, {"u", vjson(p.u)}};
}

// Fixed formatting keeps identical configs byte-identical across runs.
std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

struct Request {
    std::string command;
    CatalogEntry entry;
    bool has_entry = false;
    std::string manifold;
    std::string field;
    ChartPoint point;
    bool has_point = false;
    int samples = 0;
    unsigned long long seed = 42;
    double tol = 1e-5;
    bool has_tol = false;
    double fd_step = 0.0;  // 0: keep chart default
    double length = 0.0;
    bool has_length = false;
    double step = 1e-3;
    std::string format = "json";
    json config;  // echoed back verbatim
};

Request parse_request(const std::string& config_json) {
    json j;
    try {
        j = json::parse(config_json);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadConfig,
                    std::string("bad config JSON: ") + e.what());
    }
    try {
        Request r;
        r.config = j;
        r.command = j.at("command").get<std::string>();
        if (j.contains("custom_chart")) {
            r.entry = load_custom(j.at("custom_chart").is_string()
                                      ? j.at("custom_chart").get<std::string>()
                                      : j.at("custom_chart").dump());
            r.has_entry = true;
            r.manifold = r.entry.manifold_id;
        } else if (j.contains("manifold")) {
            r.manifold = j.at("manifold").get<std::string>();
            CatalogParams params;
            if (j.contains("params")) {
                params.r = j.at("params").value("r", params.r);
                params.lambda = j.at("params").value("lambda", params.lambda);
            }
            r.entry = load(r.manifold, params);
            r.has_entry = true;
        }
        if (j.contains("field")) r.field = j.at("field").get<std::string>();
        if (j.contains("fd_step")) {
            r.fd_step = j.at("fd_step").get<double>();
            if (r.fd_step <= 0.0)
                throw Error(ErrorCode::BadConfig, "fd_step must be positive");
            if (r.has_entry) r.entry.chart.fd_step = r.fd_step;
        }
        if (j.contains("point")) {
            const auto& pt = j.at("point");
            if (!pt.is_array() || pt.size() != 3)
                throw Error(ErrorCode::BadConfig,
                            "point must be an array of three numbers");
            r.point.chart_id = r.has_entry ? r.entry.chart.chart_id : "";
            for (int i = 0; i < 3; ++i) r.point.u[i] = pt.at(i).get<double>();
            r.has_point = true;
        } else if (r.has_entry) {
            r.point = r.entry.default_point;
        }
        r.samples = r.has_entry ? r.entry.default_sample_count : 100;
        if (j.contains("samples")) {
            r.samples = j.at("samples").get<int>();
            if (r.samples <= 0)
                throw Error(ErrorCode::BadConfig, "samples must be positive");
        }
        if (j.contains("seed"))
            r.seed = j.at("seed").get<unsigned long long>();
        if (j.contains("tol")) {
            r.tol = j.at("tol").get<double>();
            r.has_tol = true;
            if (r.tol <= 0.0)
                throw Error(ErrorCode::BadConfig, "tol must be positive");
        }
        r.length = r.has_entry ? r.entry.flow_length : 1.0;
        if (j.contains("length")) {
            r.length = j.at("length").get<double>();
            r.has_length = true;
        }
        if (j.contains("step")) {
            r.step = j.at("step").get<double>();
            if (r.step <= 0.0)
                throw Error(ErrorCode::BadConfig, "step must be positive");
        }
        r.format = j.value("format", "json");
        if (r.format != "json" && r.format != "csv" && r.format != "table")
            throw Error(ErrorCode::BadConfig,
                        "format must be json, csv, or table");
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadConfig,
                    std::string("bad config JSON: ") + e.what());
    }
}

void require_entry(const Request& r) {
    if (!r.has_entry)
        throw Error(ErrorCode::BadConfig,
                    "config needs 'manifold' or 'custom_chart'");
}

const VectorFieldSpec& require_field(const Request& r) {
    require_entry(r);
    if (r.field.empty())
        throw Error(ErrorCode::BadConfig, "config needs 'field'");
    return r.entry.field(r.field);
}

std::string wrap(const json& config, const json& results, const json& summary) {
    ordered_json top;
    top["config"] = config;
    top["results"] = results;
    top["summary"] = summary;
    top["version"] = version_string();
    return top.dump(2) + "\n";
}

json catalog_entry_json(const CatalogEntry& e, bool detailed) {
    json out{{"manifold_id", e.manifold_id}, {"description", e.description}};
    json fields = json::array();
    for (const auto& [name, spec] : e.fields) fields.push_back(name);
    out["fields"] = fields;
    if (detailed) {
        json dom = json::array();
        for (const auto& iv : e.chart.domain) dom.push_back({iv.lo, iv.hi});
        out["domain"] = dom;
        out["default_point"] = vjson(e.default_point.u);
        out["flow_length"] = e.flow_length;
        out["default_sample_count"] = e.default_sample_count;
        json exp = json::array();
        for (const auto& ev : e.expected)
            exp.push_back(json{{"field", ev.field_id},
                               {"quantity", ev.quantity},
                               {"value", ev.value},
                               {"tol", ev.tol},
                               {"note", ev.note}});
        out["expected"] = exp;
    }
    return out;
}

RunResult do_catalog_list(const Request& r) {
    json results = json::array();
    for (const auto& id : catalog_ids())
        results.push_back(catalog_entry_json(load(id), false));
    json summary{{"count", results.size()}};
    RunResult res;
    if (r.format == "table") {
        std::ostringstream os;
        for (const auto& e : results) {
            os << e.at("manifold_id").get<std::string>() << "  fields:";
            for (const auto& f : e.at("fields"))
                os << " " << f.get<std::string>();
            os << "\n";
        }
        res.output = os.str();
    } else {
        res.output = wrap(r.config, results, summary);
    }
    return res;
}

RunResult do_catalog_show(const Request& r) {
    require_entry(r);
    const json results = catalog_entry_json(r.entry, true);
    RunResult res;
    res.output = wrap(r.config, results, json{{"manifold_id", r.manifold}});
    return res;
}

json coefficients_json(const SpinCoefficients& sc) {
    return json{{"kappa", cjson(sc.kappa)},   {"rho", cjson(sc.rho)},
                {"sigma", cjson(sc.sigma)},   {"epsilon", cjson(sc.epsilon)},
                {"beta", cjson(sc.beta)},     {"div", sc.div},
                {"omega", sc.omega},          {"shear_mag2", sc.shear_mag2}};
}

RunResult do_analyze(const Request& r) {
    const VectorFieldSpec& K = require_field(r);
    const Triad tri = build_frame(r.entry.chart, K, r.point);
    const SpinCoefficients sc = spin_coefficients(r.entry.chart, K, r.point);
    const TriadCurvature tc = triad_curvature(r.entry.chart, K, r.point);
    const double check_tol = r.has_tol ? r.tol : 1e-7;
    const FlowFlags flags = classify(r.entry.chart, K, r.point, check_tol);
    const double kres = killing_residual(r.entry.chart, K, r.point);
    const double S = curvature(r.entry.chart, r.point).S;

    json results;
    results["point"] = point_json(r.point);
    results["triad"] = json{{"k", vjson(tri.k)},
                            {"x", vjson(tri.x)},
                            {"y", vjson(tri.y)},
                            {"m", cvjson(tri.m)},
                            {"seed_index", tri.seed_index}};
    results["coefficients"] = coefficients_json(sc);
    results["curvature"] = json{{"ric_kk", tc.ric_kk},
                                {"ric_mm", cjson(tc.ric_mm)},
                                {"ric_km", cjson(tc.ric_km)},
                                {"ric_mmbar", tc.ric_mmbar},
                                {"S", S}};
    results["classification"] =
        json{{"geodesic", flags.geodesic},
             {"divergence_free", flags.divergence_free},
             {"shear_free", flags.shear_free},
             {"hypersurface_orthogonal", flags.hypersurface_orthogonal},
             {"killing", flags.killing},
             {"killing_residual", kres}};

    json summary{{"manifold_id", r.manifold},
                 {"field_id", r.field},
                 {"tol", check_tol}};
    RunResult res;
    res.output = wrap(r.config, results, summary);
    return res;
}

RunResult do_verify(const Request& r) {
    const VectorFieldSpec& K = require_field(r);
    const double pad = 8.0 * std::max(r.entry.chart.fd_step, 1e-4);
    const auto pts = sample_points(r.entry.chart, r.entry.sample_box,
                                   r.samples, r.seed, pad);
    const double tol = r.has_tol ? r.tol : 1e-5;
    const auto reports =
        run_identity_suite(r.entry.chart, K, pts, tol, 1e-4, r.seed);

    bool all_pass = true;
    double worst = 0.0;
    std::string worst_eq;
    json results = json::array();
    for (const auto& rep : reports) {
        all_pass = all_pass && rep.pass;
        if (rep.max_residual > worst) {
            worst = rep.max_residual;
            worst_eq = rep.equation_id;
        }
        results.push_back(json{{"equation_id", rep.equation_id},
                               {"points", rep.points},
                               {"max_residual", rep.max_residual},
                               {"mean_residual", rep.mean_residual},
                               {"tol", rep.tol},
                               {"pass", rep.pass},
                               {"worst_point", point_json(rep.worst_point)},
                               {"metric_scale", rep.metric_scale}});
    }
    json summary{{"all_pass", all_pass},
                 {"max_residual", worst},
                 {"worst_equation", worst_eq},
                 {"points", static_cast<int>(pts.size())},
                 {"tol", tol},
                 {"seed", r.seed}};

    RunResult res;
    res.status = all_pass ? RunStatus::Ok : RunStatus::CheckFailed;
    if (r.format == "table") {
        std::ostringstream os;
        for (const auto& rep : reports)
            os << rep.equation_id << "  max=" << fmt(rep.max_residual)
               << "  mean=" << fmt(rep.mean_residual)
               << (rep.pass ? "  pass" : "  FAIL") << "\n";
        os << (all_pass ? "all pass" : "FAILED") << "\n";
        res.output = os.str();
    } else {
        res.output = wrap(r.config, results, summary);
    }
    return res;
}

std::string flow_csv(const std::vector<FlowSample>& trace) {
    std::ostringstream os;
    os << "t,u1,u2,u3,v1,v2,v3,div_direct,div_transported,omega_direct,"
          "omega_transported,shear_mag2,S\n";
    for (const auto& s : trace) {
        os << fmt(s.t);
        for (int i = 0; i < 3; ++i) os << ',' << fmt(s.p.u[i]);
        for (int i = 0; i < 3; ++i) os << ',' << fmt(s.v[i]);
        os << ',' << fmt(s.div_direct) << ',' << fmt(s.div_transported) << ','
           << fmt(s.omega_direct) << ',' << fmt(s.omega_transported) << ','
           << fmt(s.shear_mag2) << ',' << fmt(s.S) << "\n";
    }
    return os.str();
}

RunResult do_flow(const Request& r) {
    const VectorFieldSpec& K = require_field(r);
    const auto trace =
        transport_kinematics(r.entry.chart, K, r.point, r.length, r.step);

    double dev_div = 0.0, dev_omega = 0.0;
    double omega_min = std::numeric_limits<double>::infinity();
    double omega_max = 0.0;
    int sign_changes = 0;
    for (size_t i = 0; i < trace.size(); ++i) {
        const auto& s = trace[i];
        dev_div = std::max(dev_div,
                           std::abs(s.div_direct - s.div_transported));
        dev_omega = std::max(dev_omega,
                             std::abs(s.omega_direct - s.omega_transported));
        omega_min = std::min(omega_min, std::abs(s.omega_direct));
        omega_max = std::max(omega_max, std::abs(s.omega_direct));
        if (i > 0 && trace[i - 1].omega_direct * s.omega_direct < 0.0)
            ++sign_changes;
    }

    json focusing;
    try {
        const FocusingReport fr =
            focusing_check(r.entry.chart, K, r.point, r.length, r.step);
        focusing = json{{"min_div", fr.min_div},
                        {"comparison_bound_holds", fr.comparison_bound_holds}};
        focusing["predicted_blowup_t"] =
            fr.predicted_blowup_t ? json(*fr.predicted_blowup_t) : json();
        focusing["threshold_crossing_t"] =
            fr.threshold_crossing_t ? json(*fr.threshold_crossing_t) : json();
    } catch (const Error&) {
        focusing = json();  // focusing hypotheses not met; summary omits it
    }

    json summary{{"steps", static_cast<int>(trace.size())},
                 {"length", r.length},
                 {"step", r.step},
                 {"max_div_deviation", dev_div},
                 {"max_omega_deviation", dev_omega},
                 {"omega_min_abs", omega_min},
                 {"omega_max_abs", omega_max},
                 {"omega_sign_changes", sign_changes},
                 {"focusing", focusing}};

    RunResult res;
    res.csv = flow_csv(trace);
    if (r.format == "csv") {
        res.output = res.csv;
    } else {
        res.output = wrap(r.config, json::array(), summary);
    }
    return res;
}

RunResult do_principal(const Request& r) {
    const VectorFieldSpec& K = require_field(r);
    const double tol = r.has_tol ? r.tol : 1e-7;
    const double pad = 8.0 * std::max(r.entry.chart.fd_step, 1e-4);
    const int n = std::min(r.samples, 25);
    const auto pts =
        sample_points(r.entry.chart, r.entry.sample_box, n, r.seed, pad);

    json results = json::array();
    for (const auto& p : pts) {
        const PrincipalReport pr = principal_check(r.entry.chart, K, p, tol);
        results.push_back(
            json{{"point", point_json(p)},
                 {"sup_Rk", pr.sup_Rk},
                 {"kappaS_residual", pr.kappaS_residual},
                 {"shear_omega_residual", pr.shear_omega_residual},
                 {"scalar_evolution_residual", pr.scalar_evolution_residual},
                 {"S", pr.S},
                 {"nonflat", pr.nonflat},
                 {"two_principal", pr.two_principal}});
    }

    const GSReport gs = goldberg_sachs_check(r.entry.chart, K, pts, tol);
    json summary{{"biconditional_holds", gs.biconditional_holds},
                 {"S_mean", gs.S_mean},
                 {"points", static_cast<int>(pts.size())},
                 {"tol", tol}};

    RunResult res;
    res.status =
        gs.biconditional_holds ? RunStatus::Ok : RunStatus::CheckFailed;
    res.output = wrap(r.config, results, summary);
    return res;
}

RunStatus status_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::BadConfig:
        case ErrorCode::BadParameter:
        case ErrorCode::UnknownManifold:
        case ErrorCode::NotGeodesicField:
        case ErrorCode::HypothesesViolated:
        case ErrorCode::PointOutsideChart:
        case ErrorCode::StepNotPositive:
            return RunStatus::Usage;
        default:
            return RunStatus::Numeric;
    }
}

}  // namespace

const char* version_string() { return "np3 0.1.0"; }

RunResult run_command(const std::string& config_json) {
    try {
        const Request r = parse_request(config_json);
        if (r.command == "catalog_list") return do_catalog_list(r);
        if (r.command == "catalog_show") return do_catalog_show(r);
        if (r.command == "analyze") return do_analyze(r);
        if (r.command == "verify") return do_verify(r);
        if (r.command == "flow") return do_flow(r);
        if (r.command == "principal") return do_principal(r);
        throw Error(ErrorCode::BadConfig,
                    "unknown command '" + r.command + "'");
    } catch (const Error& e) {
        RunResult res;
        res.status = status_for(e.code());
        res.error = std::string(error_code_name(e.code())) + ": " + e.what();
        return res;
    } catch (const std::exception& e) {
        RunResult res;
        res.status = RunStatus::Numeric;
        res.error = std::string("error: ") + e.what();
        return res;
    }
}

}  // namespace np3
