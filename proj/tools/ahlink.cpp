// Command-line front end for the 802.11ah link planning library: link
// budgets, fade margins, relay range/rate planning, and the Monte-Carlo
// OFDM BER simulator. Output is CSV or key=value summaries (or JSON with
// --json) and is byte-identical across reruns with the same arguments.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ahlink/catalog.hpp"
#include "ahlink/relay.hpp"
#include "ahlink/scenario.hpp"
#include "ahlink/sim.hpp"

using json = nlohmann::json;
using namespace ahlink;

namespace {

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

DeviceProfile device_from_name(const std::string& name, const Catalog& cat) {
    if (name == "ap") return DeviceProfile::ap(10.0);
    if (name == "ap-eu") return DeviceProfile::ap(cat.regulatory("Europe").max_erp_dbm());
    if (name == "ap-us")
        return DeviceProfile::ap(cat.regulatory("United States").max_erp_dbm());
    if (name == "rs") return DeviceProfile::rs();
    if (name == "st") return DeviceProfile::st();
    throw std::runtime_error("unknown device preset '" + name +
                             "' (expected ap, ap-eu, ap-us, rs, st)");
}

/// Collects either key=value summary lines or CSV rows, then lands them on
/// stdout or in a file in one shot.
struct Output {
    bool json_mode = false;
    std::string path;          // empty = stdout
    std::string gnuplot_path;  // empty = no stub
    std::ostringstream text;
    json doc;
    std::string csv_header;

    void kv(const std::string& key, const std::string& value) {
        text << key << "=" << value << "\n";
        doc[key] = value;
    }
    void kv(const std::string& key, double value) {
        text << key << "=" << fmt(value) << "\n";
        doc[key] = value;
    }
    void kv(const std::string& key, long long value) {
        text << key << "=" << value << "\n";
        doc[key] = value;
    }
    void csv_begin(const std::string& header) {
        csv_header = header;
        text << header << "\n";
        doc["columns"] = json::array();
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ',')) doc["columns"].push_back(col);
        doc["rows"] = json::array();
    }
    void csv_row(const std::vector<double>& cells) {
        json row = json::array();
        for (size_t i = 0; i < cells.size(); ++i) {
            text << (i ? "," : "") << fmt(cells[i], 10);
            row.push_back(cells[i]);
        }
        text << "\n";
        doc["rows"].push_back(row);
    }

    void flush() const {
        const std::string body = json_mode ? doc.dump(2) + "\n" : text.str();
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
            out << body;
        }
        if (!gnuplot_path.empty()) write_gnuplot_stub();
    }

    void write_gnuplot_stub() const {
        std::ofstream gp(gnuplot_path, std::ios::binary);
        if (!gp)
            throw std::runtime_error("cannot write gnuplot stub '" + gnuplot_path + "'");
        const std::string data = path.empty() ? "data.csv" : path;
        gp << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set grid\n";
        if (!csv_header.empty()) {
            std::stringstream ss(csv_header);
            std::string x, y;
            std::getline(ss, x, ',');
            std::getline(ss, y, ',');
            gp << "set xlabel '" << x << "'\n"
               << "set ylabel '" << y << "'\n"
               << "plot '" << data << "' using 1:2 with linespoints\n";
        } else {
            gp << "plot '" << data << "' using 1:2 with linespoints\n";
        }
    }
};

struct ScenarioOpts {
    std::string scenario_path;
    std::string direction = "dl";
    std::string st_deployment = "macro";
    double ap_hop_distance_m = 400.0;
    double p_out_total = 0.1;
    int mcs = 10;
    double rician_k_db = 9.0;
    double ap_tx_dbm = 10.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario config file");
        cmd->add_option("--direction", direction, "dl or ul")
            ->check(CLI::IsMember({"dl", "ul"}));
        cmd->add_option("--st-deployment", st_deployment, "macro or pico")
            ->check(CLI::IsMember({"macro", "pico"}));
        cmd->add_option("--ap-hop-distance", ap_hop_distance_m,
                        "fixed AP-to-relay distance, m");
        cmd->add_option("--p-out-total", p_out_total, "end-to-end outage target");
        cmd->add_option("--mcs", mcs, "MCS index");
        cmd->add_option("--rician-k", rician_k_db, "AP-hop Rician K factor, dB");
        cmd->add_option("--ap-tx-dbm", ap_tx_dbm, "AP transmit power, dBm");
    }

    ScenarioFile file(const CLI::App* cmd) const {
        if (!scenario_path.empty()) return ScenarioFile::parse_file(scenario_path);
        // Synthesize an equivalent config so file and flag paths share code.
        std::ostringstream os;
        os << "[scenario]\n"
           << "direction = " << direction << "\n"
           << "st_deployment = " << st_deployment << "\n"
           << "ap_hop_distance_m = " << fmt(ap_hop_distance_m, 17) << "\n"
           << "p_out_total = " << fmt(p_out_total, 17) << "\n"
           << "mcs = " << mcs << "\n"
           << "rician_k_db = " << fmt(rician_k_db, 17) << "\n"
           << "[devices]\n"
           << "ap_tx_dbm = " << fmt(ap_tx_dbm, 17) << "\n";
        (void)cmd;
        return ScenarioFile::parse_string(os.str(), "<flags>");
    }
};

FadingModel fading_from_flags(const std::string& name, double k_db) {
    return FadingModel::from_string(name, k_db);
}

int run(int argc, char** argv) {
    CLI::App app{"802.11ah sub-GHz link budget, relay planning, and BER simulation"};
    app.require_subcommand(1);

    std::string catalog_path;
    Output out;
    app.add_option("--catalog", catalog_path,
                   "catalog data file (default: AHLINK_CATALOG or built-in)");
    app.add_flag("--json", out.json_mode, "emit JSON instead of text/CSV");
    app.add_option("-o,--output", out.path, "write output to a file instead of stdout");
    app.add_option("--gnuplot-stub", out.gnuplot_path,
                   "also write a gnuplot script for the CSV output");

    // --- catalog ---------------------------------------------------------
    auto* c_cat = app.add_subcommand("catalog", "inspect the standards catalog");
    std::string cat_region, cat_save;
    c_cat->add_option("--region", cat_region, "show one regulatory region");
    c_cat->add_option("--save", cat_save, "round-trip the catalog to a file");

    // --- fade-margin -----------------------------------------------------
    auto* c_fm = app.add_subcommand("fade-margin", "fade margin for an outage target");
    std::string fm_fading = "rayleigh", fm_grid;
    double fm_k = 9.0, fm_pout = 0.1;
    c_fm->add_option("--fading", fm_fading, "rayleigh or rician")
        ->check(CLI::IsMember({"rayleigh", "rician"}));
    c_fm->add_option("--k-db", fm_k, "Rician K factor, dB");
    c_fm->add_option("--p-out", fm_pout, "outage probability");
    c_fm->add_option("--p-out-grid", fm_grid, "outage grid (start:stop:step or list)");

    // --- range -----------------------------------------------------------
    auto* c_range = app.add_subcommand("range", "maximum range of a single link");
    std::string rg_tx = "ap", rg_rx = "st", rg_dep = "macro", rg_fad = "rayleigh";
    double rg_k = 9.0, rg_pout = 0.1, rg_mds = 0.0;
    int rg_mcs = 0, rg_bw = 1;
    bool rg_has_mds = false;
    c_range->add_option("--tx", rg_tx, "transmitter preset (ap, ap-eu, ap-us, rs, st)");
    c_range->add_option("--rx", rg_rx, "receiver preset");
    c_range->add_option("--deployment", rg_dep, "macro or pico")
        ->check(CLI::IsMember({"macro", "pico"}));
    c_range->add_option("--fading", rg_fad, "none, rayleigh, or rician")
        ->check(CLI::IsMember({"none", "rayleigh", "rician"}));
    c_range->add_option("--k-db", rg_k, "Rician K factor, dB");
    c_range->add_option("--p-out", rg_pout, "outage probability");
    auto* mds_opt = c_range->add_option("--mds", rg_mds, "sensitivity override, dBm");
    c_range->add_option("--mcs", rg_mcs, "MCS index for the sensitivity lookup");
    c_range->add_option("--bandwidth", rg_bw, "bandwidth in MHz for the lookup");

    // --- rate ------------------------------------------------------------
    auto* c_rate = app.add_subcommand("rate", "achievable rate / distance of one link");
    std::string rt_tx = "ap", rt_rx = "st", rt_dep = "macro", rt_fad = "rayleigh";
    std::string rt_grid;
    double rt_k = 9.0, rt_pout = 0.1, rt_distance = 0.0, rt_target = 0.0;
    long rt_packet = 32768;
    double rt_per = 0.1, rt_cgain = 0.0;
    c_rate->add_option("--tx", rt_tx, "transmitter preset");
    c_rate->add_option("--rx", rt_rx, "receiver preset");
    c_rate->add_option("--deployment", rt_dep, "macro or pico")
        ->check(CLI::IsMember({"macro", "pico"}));
    c_rate->add_option("--fading", rt_fad, "none, rayleigh, or rician")
        ->check(CLI::IsMember({"none", "rayleigh", "rician"}));
    c_rate->add_option("--k-db", rt_k, "Rician K factor, dB");
    c_rate->add_option("--p-out", rt_pout, "outage probability");
    auto* rt_d_opt = c_rate->add_option("--distance", rt_distance, "link distance, m");
    auto* rt_t_opt = c_rate->add_option("--target-rate", rt_target, "target rate, b/s");
    auto* rt_g_opt = c_rate->add_option("--distances", rt_grid, "distance grid for CSV");
    c_rate->add_option("--packet-bits", rt_packet, "packet length, bits");
    c_rate->add_option("--per", rt_per, "packet error target");
    c_rate->add_option("--coding-gain", rt_cgain, "coding gain, dB");

    // --- relay-range -----------------------------------------------------
    auto* c_rr = app.add_subcommand("relay-range",
                                    "coverage extension of a dual-hop DF relay");
    ScenarioOpts rr_sc;
    rr_sc.attach(c_rr);
    double rr_mds = 0.0;
    bool rr_has_mds = false;
    auto* rr_mds_opt = c_rr->add_option("--mds", rr_mds, "sensitivity override, dBm");
    int rr_bw = 1;
    c_rr->add_option("--bandwidth", rr_bw, "bandwidth in MHz for the MDS lookup");

    // --- relay-rate ------------------------------------------------------
    auto* c_rt = app.add_subcommand("relay-rate",
                                    "end-to-end DF rate over the solved hop");
    ScenarioOpts rt_sc;
    rt_sc.attach(c_rt);
    std::string rrt_grid;
    double rrt_target = 0.0;
    long rrt_packet = 32768;
    double rrt_per = 0.1, rrt_cgain = 0.0;
    auto* rrt_g_opt = c_rt->add_option("--distances", rrt_grid, "ST-hop distance grid");
    auto* rrt_t_opt = c_rt->add_option("--target-rate", rrt_target,
                                       "solve the largest distance for this rate, b/s");
    c_rt->add_option("--packet-bits", rrt_packet, "packet length, bits");
    c_rt->add_option("--per", rrt_per, "end-to-end packet error target");
    c_rt->add_option("--coding-gain", rrt_cgain, "coding gain, dB");

    // --- ber-sim ---------------------------------------------------------
    auto* c_sim = app.add_subcommand("ber-sim",
                                     "Monte-Carlo end-to-end BER over the relay");
    ScenarioOpts sim_sc;
    sim_sc.attach(c_sim);
    std::string sim_grid;
    long long sim_trials = -1, sim_minerr = -1;
    int sim_workers = -1, sim_blocks = -1;
    std::int64_t sim_seed = -1;
    c_sim->add_option("--distances", sim_grid, "ST-hop distance grid");
    c_sim->add_option("--trials", sim_trials, "trial cap per distance");
    c_sim->add_option("--min-errors", sim_minerr, "stop after this many bit errors");
    c_sim->add_option("--seed", sim_seed, "master seed");
    c_sim->add_option("--workers", sim_workers, "worker threads");
    c_sim->add_option("--blocks", sim_blocks, "payload blocks per channel draw");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    rg_has_mds = mds_opt->count() > 0;
    rr_has_mds = rr_mds_opt->count() > 0;

    const Catalog cat = Catalog::load(
        catalog_path.empty() ? Catalog::default_path() : catalog_path);

    if (app.got_subcommand(c_cat)) {
        if (!cat_save.empty()) cat.save(cat_save);
        if (!cat_region.empty()) {
            const auto& r = cat.regulatory(cat_region);
            out.kv("region", r.region);
            out.kv("max_erp_mw", r.max_erp_mw());
            out.kv("max_erp_dbm", r.max_erp_dbm());
            std::ostringstream bws;
            for (size_t i = 0; i < r.bandwidths_mhz.size(); ++i)
                bws << (i ? "," : "") << r.bandwidths_mhz[i];
            out.kv("bandwidths_mhz", bws.str());
        } else {
            out.csv_begin("mcs,rate_1mhz_mbps,mds_1mhz_dbm");
            for (const auto& m : cat.all_mcs()) {
                if (!m.rates_mbps.count(1)) continue;
                std::vector<double> row{static_cast<double>(m.id), m.rate_mbps(1)};
                row.push_back(m.mds_dbm.count(1) ? m.mds(1)
                                                 : std::numeric_limits<double>::quiet_NaN());
                out.csv_row(row);
            }
        }
    } else if (app.got_subcommand(c_fm)) {
        const FadingModel model = fading_from_flags(fm_fading, fm_k);
        if (!fm_grid.empty()) {
            out.csv_begin("p_out,fm_db");
            for (double p : parse_grid(fm_grid)) out.csv_row({p, fade_margin(model, p)});
        } else {
            out.kv("fading", model.name());
            out.kv("p_out", fm_pout);
            out.kv("fm_db", fade_margin(model, fm_pout));
        }
    } else if (app.got_subcommand(c_range)) {
        const auto tx = device_from_name(rg_tx, cat);
        const auto rx = device_from_name(rg_rx, cat);
        const auto dep = DeploymentModel::from_string(rg_dep);
        const FadingModel fad = fading_from_flags(rg_fad, rg_k);
        const double mds = rg_has_mds ? rg_mds : cat.mcs(rg_mcs).mds(rg_bw);
        const double fm = fade_margin(fad, rg_pout);
        out.kv("mds_dbm", mds);
        out.kv("fm_db", fm);
        out.kv("max_range_m", max_range(tx, rx, dep, mds, fm));
    } else if (app.got_subcommand(c_rate)) {
        const auto tx = device_from_name(rt_tx, cat);
        const auto rx = device_from_name(rt_rx, cat);
        const auto dep = DeploymentModel::from_string(rt_dep);
        const FadingModel fad = fading_from_flags(rt_fad, rt_k);
        RateQuery q;
        q.packet_length_bits = rt_packet;
        q.target_per = rt_per;
        q.coding_gain_db = rt_cgain;
        const int chosen = (rt_d_opt->count() > 0) + (rt_t_opt->count() > 0) +
                           (rt_g_opt->count() > 0);
        if (chosen != 1)
            throw std::runtime_error(
                "rate needs exactly one of --distance, --target-rate, --distances");
        if (rt_g_opt->count() > 0) {
            out.csv_begin("distance_m,rate_bps");
            for (double d : parse_grid(rt_grid))
                out.csv_row({d, max_rate_at_distance(tx, rx, dep, fad, rt_pout, d, q)});
        } else if (rt_d_opt->count() > 0) {
            out.kv("distance_m", rt_distance);
            out.kv("rate_bps",
                   max_rate_at_distance(tx, rx, dep, fad, rt_pout, rt_distance, q));
        } else {
            out.kv("target_rate_bps", rt_target);
            out.kv("max_distance_m",
                   max_distance_at_rate(tx, rx, dep, fad, rt_pout, q, rt_target));
        }
    } else if (app.got_subcommand(c_rr)) {
        const auto sf = rr_sc.file(c_rr);
        const RelayScenario s = sf.relay_scenario();
        const double mds = rr_has_mds ? rr_mds : cat.mcs(s.mcs).mds(rr_bw);
        const auto r = relay_max_range(s, mds);
        out.kv("mds_dbm", mds);
        out.kv("st_hop_max_m", r.st_hop_max_m);
        out.kv("total_max_m", r.total_max_m);
        out.kv("limiting_hop", static_cast<long long>(r.limiting_hop));
        out.kv("fm_ap_hop_db", r.per_hop_fm_db.first);
        out.kv("fm_st_hop_db", r.per_hop_fm_db.second);
    } else if (app.got_subcommand(c_rt)) {
        const auto sf = rt_sc.file(c_rt);
        const RelayScenario s = sf.relay_scenario();
        RateQuery q = sf.rate_query();
        if (c_rt->count("--packet-bits")) q.packet_length_bits = rrt_packet;
        if (c_rt->count("--per")) q.target_per = rrt_per;
        if (c_rt->count("--coding-gain")) q.coding_gain_db = rrt_cgain;
        const int chosen = (rrt_g_opt->count() > 0) + (rrt_t_opt->count() > 0);
        if (chosen != 1)
            throw std::runtime_error(
                "relay-rate needs exactly one of --distances, --target-rate");
        if (rrt_g_opt->count() > 0) {
            out.csv_begin("distance_m,rdf_bps");
            for (const auto& [d, r] : relay_rate_sweep(s, q, parse_grid(rrt_grid)))
                out.csv_row({d, r});
        } else {
            out.kv("target_rate_bps", rrt_target);
            out.kv("st_hop_max_m", relay_max_distance_at_rate(s, q, rrt_target));
        }
    } else if (app.got_subcommand(c_sim)) {
        const auto sf = sim_sc.file(c_sim);
        SimConfig cfg = sf.sim_config(cat.numerology());
        if (!sim_grid.empty()) cfg.distance_grid_m = parse_grid(sim_grid);
        if (sim_trials >= 0) cfg.max_trials = sim_trials;
        if (sim_minerr >= 0) cfg.min_bit_errors = sim_minerr;
        if (sim_seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(sim_seed);
        if (sim_workers >= 0) cfg.workers = sim_workers;
        if (sim_blocks >= 0) cfg.blocks_per_trial = sim_blocks;
        if (cfg.distance_grid_m.empty())
            throw std::runtime_error(
                "ber-sim needs a distance grid (--distances or [sim] distances_m)");
        out.csv_begin("distance_m,ber,bit_errors,bit_count,ci95,trials,discarded");
        for (const auto& e : simulate_relay(cfg))
            out.csv_row({e.distance_m, e.ber, static_cast<double>(e.bit_errors),
                         static_cast<double>(e.bit_count), e.ci_halfwidth,
                         static_cast<double>(e.trials),
                         static_cast<double>(e.discarded_trials)});
    }

    out.flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CoverageError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
