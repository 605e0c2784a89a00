// Acceptance gate: one PASS/FAIL line per criterion, pinned tolerances.
// Returns the number of failed criteria as the exit status.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <vector>

#include "ahlink/catalog.hpp"
#include "ahlink/relay.hpp"
#include "ahlink/scenario.hpp"
#include "ahlink/sim.hpp"
#include "test_oracles.hpp"

using namespace ahlink;

namespace {

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& detail) {
        if (!cond) ok = false;
        notes.push_back(std::string(cond ? "  ok   " : "  BAD  ") + detail);
    }
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

const OfdmModem& modem() {
    static OfdmModem m{OfdmNumerology{}};
    return m;
}

struct Measured {
    double ber = 0;
    long long errors = 0, bits = 0;
    double trial_std = 0;
};

Measured measure(const HopPhy& hop, int mcs, int blocks, long long trials,
                 std::uint64_t salt) {
    Measured m;
    double s = 0, s2 = 0;
    for (long long t = 0; t < trials; ++t) {
        const auto r = run_single_hop_trial(hop, mcs, blocks, modem(), mix_seed(salt, 0, t));
        m.errors += r.bit_errors;
        m.bits += r.bits;
        const double rate = static_cast<double>(r.bit_errors) / r.bits;
        s += rate;
        s2 += rate * rate;
    }
    m.ber = static_cast<double>(m.errors) / m.bits;
    const double mean = s / trials;
    m.trial_std = std::sqrt(std::max(0.0, s2 / trials - mean * mean) / trials);
    return m;
}

HopPhy awgn_hop(double ebn0_db, int copies = 1) {
    HopPhy h;
    h.amplitude = 1.0;
    h.noise_sigma2 = copies / std::pow(10.0, ebn0_db / 10.0);
    h.pdp = PowerDelayProfile::single_tap().with_rician(300.0);
    return h;
}

std::string results_csv(const std::vector<BerEstimate>& res) {
    std::ostringstream os;
    os << "distance_m,ber,bit_errors,bit_count,ci95,trials,discarded\n";
    for (const auto& e : res)
        os << std::setprecision(10) << e.distance_m << "," << e.ber << ","
           << e.bit_errors << "," << e.bit_count << "," << e.ci_halfwidth << ","
           << e.trials << "," << e.discarded_trials << "\n";
    return os.str();
}

void criterion_1(Criterion& c) {
    const struct { double p, fm; } rows[] = {
        {0.05, 12.89}, {0.10, 9.77}, {0.20, 6.51}, {0.40, 2.92}};
    for (const auto& r : rows) {
        const double fm = rayleigh_fade_margin(r.p);
        c.require(std::abs(fm - r.fm) <= 0.01,
                  "Rayleigh FM(" + num(r.p) + ") = " + num(fm) + " vs " + num(r.fm) +
                      " (±0.01 dB)");
    }
    const double fm1 = rayleigh_fade_margin(0.01);
    c.require(std::abs(fm1 - 19.98) <= 0.01,
              "Rayleigh FM(0.01) = " + num(fm1) +
                  " vs 19.98 per the inversion (published table row deviates)");
}

void criterion_2(Criterion& c) {
    const struct { double p, fm; } rows[] = {{0.05, 4.5}, {0.10, 3.0}, {0.20, 2.0}};
    for (const auto& r : rows) {
        const double fm = rician_fade_margin(9.0, r.p);
        c.require(std::abs(fm - r.fm) <= 0.3,
                  "Rician FM(K=9dB, " + num(r.p) + ") = " + num(fm) + " vs " +
                      num(r.fm) + " (±0.3 dB)");
    }
    const double k_lin = std::pow(10.0, 0.9);
    for (double p : {0.05, 0.10, 0.20}) {
        const double fm = rician_fade_margin(9.0, p);
        const double rho = std::pow(10.0, -fm / 10.0);
        const double oracle = test::rician_outage_quadrature(k_lin, rho);
        c.require(std::abs(oracle - p) <= 1e-3,
                  "quadrature outage at FM(" + num(p) + ") = " + num(oracle) +
                      " (±1e-3)");
    }
}

void criterion_3(Criterion& c, const Catalog& cat) {
    const double mds = cat.mcs(10).mds(1);
    const auto ap = DeviceProfile::ap(10.0);
    const auto st = DeviceProfile::st();
    const double dl_macro = max_range(ap, st, DeploymentModel::macro(), mds, 0.0);
    const double dl_pico = max_range(ap, st, DeploymentModel::pico(), mds, 0.0);
    const double ul_macro = max_range(st, ap, DeploymentModel::macro(), mds, 0.0);
    c.require(std::abs(dl_macro - 550.0) <= 0.05 * 550.0,
              "DL macro range " + num(dl_macro) + " vs 550 m (±5%)");
    c.require(std::abs(dl_pico - 250.0) <= 0.05 * 250.0,
              "DL pico range " + num(dl_pico) + " vs 250 m (±5%)");
    c.require(std::abs(ul_macro - 300.0) <= 0.05 * 300.0,
              "UL macro range " + num(ul_macro) + " vs 300 m (±5%)");
}

void criterion_4(Criterion& c, const Catalog& cat) {
    const double mds = cat.mcs(10).mds(1);
    const struct {
        DeploymentModel dep;
        double pout, expect;
    } rows[] = {{DeploymentModel::macro(), 0.1, 250.0},
                {DeploymentModel::pico(), 0.1, 110.0},
                {DeploymentModel::macro(), 0.2, 300.0},
                {DeploymentModel::macro(), 0.4, 370.0}};
    for (const auto& r : rows) {
        const auto s = RelayScenario::make(Direction::Downlink, r.dep, 400.0, r.pout, 10);
        const double d = relay_max_range(s, mds).st_hop_max_m;
        c.require(std::abs(d - r.expect) <= 0.10 * r.expect,
                  r.dep.name() + " pout " + num(r.pout) + ": hop2 " + num(d) + " vs " +
                      num(r.expect) + " m (±10%)");
    }
}

void criterion_5(Criterion& c) {
    RateQuery big;  // 4096-byte packets, 10% PER
    const auto ap = DeviceProfile::ap(10.0);
    const auto st = DeviceProfile::st();
    const double dm = max_distance_at_rate(ap, st, DeploymentModel::macro(),
                                           FadingModel::rayleigh(), 0.1, big, 1e5);
    const double dp = max_distance_at_rate(ap, st, DeploymentModel::pico(),
                                           FadingModel::rayleigh(), 0.1, big, 1e5);
    c.require(std::abs(dm - 600.0) <= 60.0,
              "direct DL 1e5 b/s macro " + num(dm) + " vs 600 m (±10%)");
    c.require(std::abs(dp - 270.0) <= 27.0,
              "direct DL 1e5 b/s pico " + num(dp) + " vs 270 m (±10%)");

    RateQuery small;
    small.packet_length_bits = 2048;  // 256 bytes
    const auto sdl_m = RelayScenario::make(Direction::Downlink, DeploymentModel::macro(),
                                           850.0, 0.1, 0);
    const auto sdl_p = RelayScenario::make(Direction::Downlink, DeploymentModel::pico(),
                                           850.0, 0.1, 0);
    const auto sul_m = RelayScenario::make(Direction::Uplink, DeploymentModel::macro(),
                                           850.0, 0.1, 0);
    const auto sul_p = RelayScenario::make(Direction::Uplink, DeploymentModel::pico(),
                                           850.0, 0.1, 0);
    const double rdm = relay_max_distance_at_rate(sdl_m, small, 1e5);
    const double rdp = relay_max_distance_at_rate(sdl_p, small, 1e5);
    const double rum = relay_max_distance_at_rate(sul_m, small, 1e5);
    const double rup = relay_max_distance_at_rate(sul_p, small, 1e5);
    c.require(rdm >= 420.0, "relay DL hop2 macro " + num(rdm) + " >= 420 m");
    c.require(std::abs(rdp - 190.0) <= 19.0,
              "relay DL hop2 pico " + num(rdp) + " vs 190 m (±10%)");
    c.require(std::abs(rum - 270.0) <= 27.0,
              "relay UL hop1 macro " + num(rum) + " vs 270 m (±10%)");
    c.require(std::abs(rup - 120.0) <= 12.0,
              "relay UL hop1 pico " + num(rup) + " vs 120 m (±10%)");
}

void criterion_6(Criterion& c) {
    // (a) AWGN flat BPSK vs the Gaussian tail.
    const struct { double db; long long trials; int blocks; } pts[] = {
        {0.0, 400, 4}, {5.0, 2500, 4}, {10.0, 8000, 40}};
    for (const auto& pt : pts) {
        const double expect = test::q_tail(std::sqrt(2.0 * std::pow(10.0, pt.db / 10.0)));
        const auto m = measure(awgn_hop(pt.db), 0, pt.blocks, pt.trials, 61);
        const double sigma = std::sqrt(expect * (1 - expect) / m.bits);
        c.require(std::abs(m.ber - expect) <= 3.0 * sigma,
                  "(a) AWGN " + num(pt.db) + " dB: " + num(m.ber) + " vs " +
                      num(expect) + " (3 sigma)");
    }
    // (b) flat Rayleigh vs the closed form.
    {
        const double gbar = 10.0;
        HopPhy h;
        h.amplitude = 1.0;
        h.noise_sigma2 = 1.0 / gbar;
        h.pdp = PowerDelayProfile::single_tap();
        const auto m = measure(h, 0, 1, 30000, 62);
        const double expect = test::rayleigh_bpsk_ber(gbar);
        c.require(std::abs(m.ber - expect) <= 3.0 * m.trial_std,
                  "(b) Rayleigh 10 dB: " + num(m.ber) + " vs " + num(expect) +
                      " (3 sigma)");
    }
    // (c) DF cascade of two binary-symmetric hops.
    {
        const HopPhy h1 = awgn_hop(0.0), h2 = awgn_hop(2.0);
        const long long trials = 5000;
        const double p1 = measure(h1, 0, 4, trials, 63).ber;
        const double p2 = measure(h2, 0, 4, trials, 64).ber;
        long long errs = 0, bits = 0;
        for (long long t = 0; t < trials; ++t) {
            const auto r = run_relay_trial(h1, h2, 0, 4, modem(), mix_seed(65, 0, t));
            errs += r.bit_errors;
            bits += r.bits;
        }
        const double e2e = static_cast<double>(errs) / bits;
        const double expect = p1 + p2 - 2.0 * p1 * p2;
        const double sigma = std::sqrt(expect * (1 - expect) / bits);
        c.require(std::abs(e2e - expect) <= 3.0 * sigma,
                  "(c) DF cascade: " + num(e2e) + " vs p1+p2-2p1p2 = " + num(expect) +
                      " (3 sigma)");
    }
    // (d) repetition combining recovers the 3 dB split.
    {
        const auto m = measure(awgn_hop(6.0, 2), 10, 20, 8000, 66);
        double lo = 0.0, hi = 100.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (test::q_tail(std::sqrt(2.0 * mid)) > m.ber ? lo : hi) = mid;
        }
        const double eff_db = 10.0 * std::log10(0.5 * (lo + hi));
        c.require(std::abs(eff_db - 6.0) <= 0.2,
                  "(d) repetition effective Eb/N0 " + num(eff_db) +
                      " vs 6 dB total (±0.2 dB)");
    }
    // (e) MCS10 never above MCS0 across a distance sweep.
    {
        auto base = ScenarioFile::parse_string(
            "[scenario]\ndirection = dl\nst_deployment = macro\n"
            "ap_hop_distance_m = 400\np_out_total = 0.1\n"
            "[sim]\ntrials = 800\nmin_errors = 80\nblocks_per_trial = 4\nseed = 99\n"
            "distances_m = 250,450,700\n");
        SimConfig c0 = base.sim_config(OfdmNumerology{});
        c0.workers = 4;
        SimConfig c10 = c0;
        c0.mcs = 0;
        c10.mcs = 10;
        const auto r0 = simulate_relay(c0);
        const auto r10 = simulate_relay(c10);
        for (size_t i = 0; i < r0.size(); ++i) {
            const double slack = 3.0 * (r0[i].ci_halfwidth + r10[i].ci_halfwidth) / 1.96;
            c.require(r10[i].ber <= r0[i].ber + slack,
                      "(e) d=" + num(r0[i].distance_m) + ": MCS10 " + num(r10[i].ber) +
                          " <= MCS0 " + num(r0[i].ber) + " (3 sigma)");
        }
    }
    // (f) end-to-end anchors under the default PDP, one order of magnitude.
    {
        const struct {
            Direction dir;
            double d, anchor;
        } pts[] = {{Direction::Downlink, 250.0, 5e-5}, {Direction::Uplink, 140.0, 1e-5}};
        for (const auto& pt : pts) {
            SimConfig cfg;
            cfg.scenario = RelayScenario::make(pt.dir, DeploymentModel::macro(), 400.0,
                                               0.1, 10);
            cfg.mcs = 10;
            cfg.distance_grid_m = {pt.d};
            cfg.master_seed = 20260825;
            cfg.workers = 4;
            const auto res = simulate_relay(cfg);
            const double ber = res[0].ber;
            const bool enough = res[0].bit_errors >= 100;
            const double ratio = ber > 0 ? std::log10(ber / pt.anchor) : 99.0;
            c.require(enough && std::abs(ratio) <= 1.0,
                      std::string("(f) ") +
                          (pt.dir == Direction::Downlink ? "DL" : "UL") + " MCS10 @ " +
                          num(pt.d) + " m: " + num(ber) + " vs anchor " +
                          num(pt.anchor) + " (|log10 ratio| = " + num(std::abs(ratio)) +
                          " <= 1, errors " + std::to_string(res[0].bit_errors) + ")");
        }
    }
}

void criterion_7(Criterion& c) {
    auto base = ScenarioFile::parse_string(
        "[scenario]\ndirection = dl\nst_deployment = macro\n"
        "ap_hop_distance_m = 400\np_out_total = 0.1\nmcs = 10\n"
        "[sim]\ntrials = 3000\nmin_errors = 120\nblocks_per_trial = 4\nseed = 555\n"
        "distances_m = 200,350,500\n");
    std::vector<std::string> csvs;
    for (int w : {1, 2, 8}) {
        SimConfig cfg = base.sim_config(OfdmNumerology{});
        cfg.workers = w;
        csvs.push_back(results_csv(simulate_relay(cfg)));
    }
    c.require(csvs[0] == csvs[1], "CSV identical for workers 1 vs 2");
    c.require(csvs[0] == csvs[2], "CSV identical for workers 1 vs 8");
    c.require(csvs[0].find("distance_m") == 0, "CSV header present");
}

} // namespace

int main() {
    const Catalog cat = Catalog::load(Catalog::default_path());

    std::vector<Criterion> cs;
    cs.push_back({"1 Rayleigh fade margins (published table + corrected 1% row)"});
    criterion_1(cs.back());
    cs.push_back({"2 Rician fade margins (K = 9 dB) + quadrature oracle"});
    criterion_2(cs.back());
    cs.push_back({"3 Direct ranges, path loss only (MCS10 sensitivity)"});
    criterion_3(cs.back(), cat);
    cs.push_back({"4 Relay ranges under fading (400 m feeder)"});
    criterion_4(cs.back(), cat);
    cs.push_back({"5 Rate-chain distances at 1e5 b/s"});
    criterion_5(cs.back());
    cs.push_back({"6 Simulator oracles (a)-(f)"});
    criterion_6(cs.back());
    cs.push_back({"7 Worker-count determinism"});
    criterion_7(cs.back());

    int failures = 0;
    for (const auto& c : cs) {
        std::printf("%s: criterion %s\n", c.ok ? "PASS" : "FAIL", c.name.c_str());
        for (const auto& n : c.notes) std::printf("%s\n", n.c_str());
        failures += c.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(cs.size()) - failures,
                cs.size());
    return failures;
}
