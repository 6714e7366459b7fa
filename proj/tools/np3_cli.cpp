// np3 command-line front end. Builds a JSON config from flags and hands it
// to the shared library; all computation lives behind the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "np3/np3.h"

namespace {

using nlohmann::json;

struct Options {
    std::string manifold, field, point, format = "json", out, custom;
    std::vector<std::string> params;
    int samples = -1;
    unsigned long long seed = 42;
    bool seed_set = false;
    double tol = -1.0, fd_step = -1.0, length = -1.0, step = -1.0;
    bool length_set = false, step_set = false, tol_set = false,
         fd_step_set = false, samples_set = false;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--manifold", o.manifold, "catalog manifold id");
    cmd->add_option("--field", o.field, "vector field id");
    cmd->add_option("--param", o.params,
                    "manifold parameter, e.g. r=2 or lambda=0.5");
    cmd->add_option("--custom", o.custom,
                    "path to a declarative metric JSON file");
    cmd->add_option("--point", o.point, "evaluation point \"u1,u2,u3\"");
    cmd->add_option("--samples", o.samples, "sample count")
        ->each([&o](const std::string&) { o.samples_set = true; });
    cmd->add_option("--seed", o.seed, "RNG seed (default 42)")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--tol", o.tol, "tolerance")
        ->each([&o](const std::string&) { o.tol_set = true; });
    cmd->add_option("--fd-step", o.fd_step, "finite-difference step")
        ->each([&o](const std::string&) { o.fd_step_set = true; });
    cmd->add_option("--length", o.length, "flow length")
        ->each([&o](const std::string&) { o.length_set = true; });
    cmd->add_option("--step", o.step, "integrator step")
        ->each([&o](const std::string&) { o.step_set = true; });
    cmd->add_option("--format", o.format, "json|csv|table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--out", o.out, "write output to file instead of stdout");
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return NP3_USAGE;
}

bool build_config(const std::string& command, const Options& o, json& cfg,
                  std::string& err) {
    cfg["command"] = command;
    if (!o.custom.empty()) {
        std::ifstream in(o.custom);
        if (!in) {
            err = "cannot open custom metric file '" + o.custom + "'";
            return false;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg["custom_chart"] = ss.str();
    } else if (!o.manifold.empty()) {
        cfg["manifold"] = o.manifold;
    }
    if (!o.field.empty()) cfg["field"] = o.field;
    if (!o.params.empty()) {
        json params;
        for (const auto& kv : o.params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                err = "bad --param '" + kv + "', expected name=value";
                return false;
            }
            const std::string name = kv.substr(0, eq);
            if (name != "r" && name != "lambda") {
                err = "unknown parameter '" + name + "'";
                return false;
            }
            try {
                size_t used = 0;
                const std::string text = kv.substr(eq + 1);
                params[name] = std::stod(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
            } catch (const std::exception&) {
                err = "bad value in --param '" + kv + "'";
                return false;
            }
        }
        cfg["params"] = params;
    }
    if (!o.point.empty()) {
        json pt = json::array();
        std::istringstream ss(o.point);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                pt.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                err = "bad --point component '" + tok + "'";
                return false;
            }
        }
        if (pt.size() != 3) {
            err = "--point needs exactly three components";
            return false;
        }
        cfg["point"] = pt;
    }
    if (o.samples_set) cfg["samples"] = o.samples;
    if (o.seed_set) cfg["seed"] = o.seed;
    if (o.tol_set) cfg["tol"] = o.tol;
    if (o.fd_step_set) cfg["fd_step"] = o.fd_step;
    if (o.length_set) cfg["length"] = o.length;
    if (o.step_set) cfg["step"] = o.step;
    cfg["format"] = o.format;
    return true;
}

int run(const std::string& command, const Options& o) {
    json cfg;
    std::string err;
    if (!build_config(command, o, cfg, err)) return fail_usage(err);

    np3_context* ctx = np3_context_new();
    if (!ctx) return fail_usage("out of memory");
    const int status = np3_run(ctx, cfg.dump().c_str());

    const std::string output = np3_output(ctx);
    const std::string diagnostic = np3_error(ctx);
    np3_context_free(ctx);

    if (!diagnostic.empty()) std::cerr << "error: " << diagnostic << "\n";
    if (!output.empty()) {
        if (!o.out.empty()) {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) return fail_usage("cannot write '" + o.out + "'");
            f << output;
        } else {
            std::cout << output;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newman-Penrose triad toolkit for Riemannian 3-manifolds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", np3_version());

    Options o;
    std::string show_id;

    auto* catalog = app.add_subcommand("catalog", "list built-in manifolds");
    auto* cat_list = catalog->add_subcommand("list", "list all entries");
    auto* cat_show = catalog->add_subcommand("show", "show one entry");
    cat_show->add_option("manifold", show_id, "manifold id")->required();
    cat_show->add_option("--param", o.params, "manifold parameter");
    for (CLI::App* c : {cat_list, cat_show}) {
        c->add_option("--format", o.format, "json|table")
            ->check(CLI::IsMember({"json", "table"}));
        c->add_option("--out", o.out, "write output to file");
    }
    catalog->require_subcommand(1);

    auto* analyze =
        app.add_subcommand("analyze", "triad and coefficients at a point");
    auto* verify =
        app.add_subcommand("verify", "batch structure-equation residuals");
    auto* flow = app.add_subcommand("flow", "geodesic flow kinematics trace");
    auto* principal =
        app.add_subcommand("principal", "2-principal / shear-rotation checks");
    for (CLI::App* c : {analyze, verify, flow, principal}) add_common(c, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : NP3_USAGE;
    }

    if (catalog->parsed()) {
        if (cat_list->parsed()) return run("catalog_list", o);
        o.manifold = show_id;
        (void)cat_show;
        return run("catalog_show", o);
    }
    if (analyze->parsed()) return run("analyze", o);
    if (verify->parsed()) return run("verify", o);
    if (flow->parsed()) return run("flow", o);
    if (principal->parsed()) return run("principal", o);
    return NP3_USAGE;
}
