/*
 * Copyright 2026 The xvaengine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xva/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "xva/errors.hpp"
#include "xva/exposure.hpp"
#include "xva/kernels/kernels.hpp"

namespace xva {

using nlohmann::json;

namespace {

json estimate_json(const ComponentEstimate& e) {
    return json{{"value", e.value}, {"se", e.se}};
}

json report_json(const XvaReport& r) {
    json j;
    j["id"] = r.id;
    j["cva"] = estimate_json(r.cva);
    j["dva"] = estimate_json(r.dva);
    j["fva"] = estimate_json(r.fva);
    j["colva"] = estimate_json(r.colva);
    j["mva"] = estimate_json(r.mva);
    j["discva"] = estimate_json(r.discva);
    j["xva"] = estimate_json(r.xva);
    j["xva_hat"] = r.xva_hat;
    j["bsde_xva0"] = r.bsde_xva0;
    j["clean_value"] = r.clean_value;
    j["front_office_value"] = r.front_office_value;
    j["full_value"] = r.full_value;
    j["picard_iterations"] = r.picard_iterations;
    j["converged"] = r.converged;
    j["last_delta"] = r.last_delta;
    j["dt_bound"] = r.dt_bound;
    return j;
}

// flat one-row-per-report CSV companion to report.json
void write_report_csv(const std::string& path, const std::vector<const XvaReport*>& reports) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot open " + path + " for writing");
    std::fprintf(f, "id,cva,cva_se,dva,dva_se,fva,fva_se,colva,colva_se,mva,mva_se,"
                    "discva,discva_se,xva,xva_se,xva_hat,bsde_xva0,clean_value,"
                    "front_office_value,full_value,picard_iterations,converged,last_delta,"
                    "dt_bound\n");
    for (const XvaReport* r : reports) {
        std::fprintf(f,
                     "%s,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,"
                     "%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%.10f,%d,%d,%.3e,%.6e\n",
                     r->id.c_str(), r->cva.value, r->cva.se, r->dva.value, r->dva.se, r->fva.value,
                     r->fva.se, r->colva.value, r->colva.se, r->mva.value, r->mva.se,
                     r->discva.value, r->discva.se, r->xva.value, r->xva.se, r->xva_hat,
                     r->bsde_xva0, r->clean_value, r->front_office_value, r->full_value,
                     r->picard_iterations, r->converged ? 1 : 0, r->last_delta, r->dt_bound);
    }
    if (std::fclose(f) != 0) throw ConfigError("failed writing " + path);
}

void summary_lines(std::ostream& os, const XvaReport& r) {
    os << "  [" << r.id << "]\n";
    os << "    clean value        " << r.clean_value << "\n";
    os << "    front-office value " << r.front_office_value << "\n";
    os << "    CVA    " << r.cva.value << "  (se " << r.cva.se << ")\n";
    os << "    DVA    " << r.dva.value << "  (se " << r.dva.se << ")\n";
    os << "    FVA    " << r.fva.value << "  (se " << r.fva.se << ")\n";
    os << "    ColVA  " << r.colva.value << "  (se " << r.colva.se << ")\n";
    os << "    MVA    " << r.mva.value << "  (se " << r.mva.se << ")\n";
    os << "    DiscVA " << r.discva.value << "  (se " << r.discva.se << ")\n";
    os << "    XVA    " << r.xva.value << "   XVA-hat " << r.xva_hat << "\n";
    os << "    full value         " << r.full_value << "\n";
    os << "    picard iterations  " << r.picard_iterations
       << (r.converged ? "" : "  NOT CONVERGED") << "\n";
}

} // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);
    const TimeGrid grid = TimeGrid::uniform(cfg.horizon, cfg.n_steps);
    Market market = build_market(cfg.env, cfg.assets, grid, cfg.n_paths, cfg.seed);

    if (cfg.dump_paths)
        for (std::size_t i = 0; i < market.paths.size(); ++i)
            dump_paths_csv(market.paths[i],
                           cfg.output_dir + "/paths_" + market.assets[i].id + ".csv");

    json root;
    root["schema_version"] = 1;
    root["mode"] = to_string(cfg.mode);
    root["n_paths"] = cfg.n_paths;
    root["n_steps"] = cfg.n_steps;
    root["seed"] = cfg.seed;
    root["kernels"] = kernels::active().name;

    const std::vector<double> rdf = [&] {
        std::vector<double> w(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            w[i] = std::exp(-cfg.env.r.integral(0.0, grid[i]));
        return w;
    }();

    bool converged = true;
    std::ostringstream summary;
    summary.precision(10);

    auto emit_exposure = [&](const NettingSolveOutput& out) {
        ExposureProfile prof =
            cfg.undeflated_exposure
                ? profile(out.exposure, cfg.pfe_quantile)
                : profile(deflate(out.exposure, rdf), cfg.pfe_quantile);
        emit_csv(prof, cfg.output_dir + "/exposure_" + out.report.id + ".csv",
                 cfg.gnuplot_exposure);
    };

    if (cfg.mode == RunMode::incremental) {
        if (!cfg.candidate) throw ConfigError("incremental mode requires a candidate");
        IncrementalResult inc = incremental_charge(cfg.portfolio, *cfg.candidate, market, cfg.solver);
        root["base"] = json::array();
        for (const auto& r : inc.base.netting_sets) root["base"].push_back(report_json(r));
        root["base_totals"] = report_json(inc.base.totals);
        root["full"] = json::array();
        for (const auto& r : inc.full.netting_sets) root["full"].push_back(report_json(r));
        root["full_totals"] = report_json(inc.full.totals);
        const IncrementalRecord& rec = inc.record;
        root["incremental"] = json{{"delta_xva", rec.delta_xva},
                                   {"delta_v", rec.delta_v},
                                   {"nl", rec.nl},
                                   {"nl_paper", rec.nl_paper},
                                   {"delta_cva", rec.delta_cva},
                                   {"candidate_front0", rec.candidate_front0},
                                   {"candidate_discva0", rec.candidate_discva0},
                                   {"standalone", report_json(rec.standalone)}};
        converged = inc.base.totals.converged && inc.full.totals.converged &&
                    rec.standalone.converged;
        std::vector<const XvaReport*> rows;
        for (const auto& r : inc.base.netting_sets) rows.push_back(&r);
        rows.push_back(&inc.base.totals);
        for (const auto& r : inc.full.netting_sets) rows.push_back(&r);
        rows.push_back(&inc.full.totals);
        rows.push_back(&rec.standalone);
        write_report_csv(cfg.output_dir + "/report_rows.csv", rows);
        summary << "incremental run\n";
        summary << "base portfolio:\n";
        summary_lines(summary, inc.base.totals);
        summary << "full portfolio:\n";
        summary_lines(summary, inc.full.totals);
        summary << "candidate standalone:\n";
        summary_lines(summary, rec.standalone);
        summary << "delta XVA  " << rec.delta_xva << "\n";
        summary << "delta CVA  " << rec.delta_cva << "\n";
        summary << "delta V    " << rec.delta_v << "\n";
        summary << "NL         " << rec.nl << "  (paper arithmetic " << rec.nl_paper << ")\n";
    } else {
        std::vector<XvaReport> reports;
        json ns_json = json::array();
        json glevel = json::array();
        for (const auto& ns : cfg.portfolio.netting_sets) {
            NettingSolveOutput out = solve_netting_set(ns, cfg.portfolio, market, cfg.solver);
            emit_exposure(out);
            converged = converged && out.report.converged;
            ns_json.push_back(report_json(out.report));
            if (cfg.mode == RunMode::validate_g) {
                NettingAssembly asmb = assemble_netting_state(ns, cfg.portfolio, market, cfg.solver);
                GLevelComparison g = validate_g_level(asmb.state, cfg.env,
                                                      market.paths_for(asmb.asset_id), cfg.solver,
                                                      cfg.seed);
                glevel.push_back(json{{"id", ns.id},
                                      {"cva_f", estimate_json(g.cva_f)},
                                      {"dva_f", estimate_json(g.dva_f)},
                                      {"cva_g", estimate_json(g.cva_g)},
                                      {"dva_g", estimate_json(g.dva_g)},
                                      {"diff", g.diff},
                                      {"combined_se", g.combined_se}});
                summary << "G-level check [" << ns.id << "]: F " << (g.cva_f.value - g.dva_f.value)
                        << " vs G " << (g.cva_g.value - g.dva_g.value) << " (combined se "
                        << g.combined_se << ")\n";
            }
            reports.push_back(out.report);
        }
        PortfolioReport pr = portfolio_value(std::move(reports));
        root["netting_sets"] = ns_json;
        root["portfolio"] = report_json(pr.totals);
        if (cfg.mode == RunMode::validate_g) root["g_level"] = glevel;
        std::vector<const XvaReport*> rows;
        for (const auto& r : pr.netting_sets) rows.push_back(&r);
        rows.push_back(&pr.totals);
        write_report_csv(cfg.output_dir + "/report_rows.csv", rows);
        summary << "portfolio:\n";
        summary_lines(summary, pr.totals);
    }

    std::ofstream rf(cfg.output_dir + "/report.json");
    rf << root.dump(2) << "\n";
    rf.close();
    std::ofstream sf(cfg.output_dir + "/summary.txt");
    sf << summary.str();
    sf.close();
    log << summary.str();

    if (!converged) {
        log << "Picard iteration did not converge; see report.json diagnostics\n";
        return 3;
    }
    return 0;
}

} // namespace xva
