#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "raidsim/errors.hpp"
#include "raidsim/fleet.hpp"
#include "raidsim/sim_engine.hpp"

using namespace raidsim;

namespace {

DiskModel disk(const char* name) { return *builtin_disk(name); }

double du_hours(const IncidentLog& log) {
    double h = 0.0;
    for (const auto& d : log.du_incidents) h += d.end - d.start;
    return h;
}

void check_log_invariants(const IncidentLog& log) {
    for (const auto& d : log.du_incidents) {
        EXPECT_GE(d.start, 0.0);
        EXPECT_LT(d.start, d.end);
        EXPECT_LE(d.end, log.mission);
        EXPECT_GT(d.bytes, 0.0);
        EXPECT_LE(d.bytes, log.usable_bytes * (1 + 1e-12));
    }
    for (const auto& l : log.dl_incidents) {
        EXPECT_GE(l.time, 0.0);
        EXPECT_LE(l.time, log.mission);
        EXPECT_LE(l.lost_bytes, log.usable_bytes * (1 + 1e-12));
    }
}

}  // namespace

TEST(SimulateArray, NoEventsGivesEmptyLog) {
    DiskModel d = disk("diskA");
    d.d_df = {0, 1e12, 1};
    d.d_lse = {0, 1e15, 1};
    const auto log = simulate_array(d, CodeConfig::pmds(1, 1, 0, 0), PolicyConfig{}, 1000, 1, 0);
    EXPECT_TRUE(log.du_incidents.empty());
    EXPECT_TRUE(log.dl_incidents.empty());
    EXPECT_EQ(log.counters.disk_failures, 0u);
    EXPECT_EQ(log.counters.lse_arrivals, 0u);
}

TEST(SimulateArray, LogInvariantsAcrossConfigurations) {
    const std::vector<CodeConfig> codes = {CodeConfig::raid1(), CodeConfig::raid5(7), CodeConfig::raid6(7),
                                           CodeConfig::pmds(4, 8, 1, 1), CodeConfig::pmds(4, 9, 2, 2)};
    for (const auto& code : codes)
        for (bool spare : {false, true})
            for (double dos : {0.0, 0.5}) {
                PolicyConfig p;
                p.hep = 0.05;
                p.spare = spare;
                p.dos = dos;
                DiskModel d = disk("diskA");
                d.d_df.eta = 30000;
                for (std::uint64_t i = 0; i < 200; ++i) check_log_invariants(simulate_array(d, code, p, kTenYears, 3, i));
            }
}

TEST(SimulateArray, TrackedStateMatchesFullClassifier) {
    const std::vector<CodeConfig> codes = {CodeConfig::raid5(3), CodeConfig::raid6(4), CodeConfig::pmds(4, 6, 1, 1),
                                           CodeConfig::pmds(4, 6, 1, 2), CodeConfig::pmds(2, 5, 2, 2)};
    SimOptions opt;
    opt.verify_classification = true;
    for (const auto& code : codes)
        for (bool spare : {false, true})
            for (ScrubModel sm : {ScrubModel::PerLse, ScrubModel::RenewalPass}) {
                PolicyConfig p;
                p.hep = 0.1;
                p.spare = spare;
                p.dos = 0.3;
                p.scrub_model = sm;
                p.ignore_lse_during_rebuild = !spare;
                // Scaled-down disk with frequent errors so stripe conditions actually occur.
                DiskModel d = disk("diskA").scaled(16384);
                d.d_df.eta = 20000;
                d.d_lse.eta = 500;
                d.d_scrub.eta = 200;
                for (std::uint64_t i = 0; i < 100; ++i) EXPECT_NO_THROW(simulate_array(d, code, p, kTenYears, 5, i, opt));
            }
}

TEST(SimulateArray, NoUnavailabilityWithoutHumanError) {
    for (bool spare : {false, true}) {
        ExperimentConfig c;
        c.disk = disk("diskA").scaled(64);
        c.disk.d_df.eta = 30000;
        c.disk.d_lse.eta = 1000;
        c.code = CodeConfig::pmds(4, 8, 1, 1);
        c.policy.hep = 0.0;
        c.policy.spare = spare;
        const FleetResult r = simulate_fleet(2000, c, {.threads = 4});
        EXPECT_EQ(r.counts.adu, 0u);
        EXPECT_EQ(r.counts.sdu, 0u);
        EXPECT_GT(r.counts.adl + r.counts.sdl, 0u);
        EXPECT_EQ(r.nomdu, 0.0);
    }
}

TEST(SimulateArray, AtMostOneArrayLossWhenAbsorbing) {
    PolicyConfig p;
    p.hep = 0.05;
    DiskModel d = disk("diskA");
    d.d_df.eta = 20000;
    int absorbed = 0;
    for (std::uint64_t i = 0; i < 3000; ++i) {
        const auto log = simulate_array(d, CodeConfig::raid5(7), p, kTenYears, 8, i);
        const auto adl = log.count(DlCause::ADL);
        EXPECT_LE(adl, 1u);
        if (adl == 1) {
            ++absorbed;
            EXPECT_TRUE(log.absorbed);
            EXPECT_EQ(log.dl_incidents.back().cause, DlCause::ADL);
        }
    }
    EXPECT_GT(absorbed, 10);
}

TEST(SimulateArray, SurvivableArrayLossResumes) {
    PolicyConfig p;
    p.dos = 1.0;
    DiskModel d = disk("diskA");
    d.d_df.eta = 5000;
    std::uint64_t multi = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto log = simulate_array(d, CodeConfig::raid5(7), p, kTenYears, 9, i);
        if (log.count(DlCause::ADL) > 1) ++multi;
        for (const auto& l : log.dl_incidents) EXPECT_GT(l.recovery_hours, 0.0);
    }
    EXPECT_GT(multi, 0u);
}

TEST(SimulateArray, SnapshotsReproduceCause) {
    PolicyConfig p;
    p.hep = 0.2;
    SimOptions opt;
    opt.record_snapshots = true;
    DiskModel d = disk("diskA").scaled(64);
    d.d_df.eta = 30000;
    d.d_lse.eta = 300;
    std::uint64_t adu = 0, sdu = 0;
    for (const auto& code : {CodeConfig::raid5(7), CodeConfig::pmds(4, 8, 1, 2), CodeConfig::raid6(6)})
        for (std::uint64_t i = 0; i < 300; ++i) {
            const auto log = simulate_array(d, code, p, kTenYears, 10, i, opt);
            for (const auto& du : log.du_incidents) {
                if (du.cause == DuCause::SurvivableRecovery || !du.opens_episode) continue;
                ASSERT_TRUE(du.snapshot.has_value());
                const ConditionSet c = classify(*du.snapshot);
                if (du.cause == DuCause::ADU) {
                    EXPECT_TRUE(c.has(Condition::ADU));
                    ++adu;
                } else {
                    EXPECT_TRUE(c.has(Condition::SDU));
                    ++sdu;
                }
            }
        }
    EXPECT_GT(adu, 0u);
    EXPECT_GT(sdu, 0u);
}

TEST(SimulateArray, ExponentialFailureCountMatchesRenewalExpectation) {
    ExperimentConfig c;
    c.disk = disk("diskA");
    c.disk.d_df = {0, kTenYears, 1};
    c.disk.d_lse = {0, 1e15, 1};
    c.code = CodeConfig::raid1();
    c.policy.dos = 1.0;
    const std::uint64_t n = 100000;
    const FleetResult r = simulate_fleet(n, c, {.threads = 8, .keep_logs = false});
    // Poisson renewal at rate 1/mission per slot: one expected failure per device per mission.
    const double expected = 2.0 * n;
    EXPECT_NEAR(static_cast<double>(r.counts.disk_failures), expected, 0.01 * expected);
}

TEST(SimulateArray, MoreHumanErrorNeverShortensUnavailability) {
    PolicyConfig lo, hi;
    lo.hep = 0.001;
    hi.hep = 0.01;
    DiskModel d = disk("diskA");
    d.d_df.eta = 50000;
    int increased = 0;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        const auto a = simulate_array(d, CodeConfig::raid5(7), lo, kTenYears, 12, i);
        const auto b = simulate_array(d, CodeConfig::raid5(7), hi, kTenYears, 12, i);
        EXPECT_EQ(a.counters.disk_failures > 0, b.counters.disk_failures > 0);
        EXPECT_GE(du_hours(b), du_hours(a)) << "array " << i;
        if (du_hours(b) > du_hours(a)) ++increased;
    }
    EXPECT_GT(increased, 0);
}

TEST(SimulateArray, DeterministicPerIndex) {
    PolicyConfig p;
    p.hep = 0.01;
    const auto a = simulate_array(disk("diskB"), CodeConfig::raid6(7), p, kTenYears, 77, 123);
    const auto b = simulate_array(disk("diskB"), CodeConfig::raid6(7), p, kTenYears, 77, 123);
    EXPECT_EQ(a.counters.events, b.counters.events);
    EXPECT_EQ(a.du_incidents.size(), b.du_incidents.size());
    EXPECT_EQ(a.dl_incidents.size(), b.dl_incidents.size());
}

TEST(SimulateFleet, SingleArrayEqualsDirectSimulation) {
    ExperimentConfig c;
    c.disk = disk("diskA");
    c.disk.d_df.eta = 20000;
    c.code = CodeConfig::raid5(7);
    c.policy.hep = 0.1;
    c.seed = 31;
    const FleetResult r = simulate_fleet(1, c);
    const auto log = simulate_array(c.effective_disk(), c.code, c.policy, c.mission_hours, c.seed, 0);
    ASSERT_EQ(r.per_array.size(), 1u);
    const auto contrib = contribution(log, c.policy.dos);
    EXPECT_EQ(r.per_array[0].counters.events, log.counters.events);
    EXPECT_EQ(r.per_array[0].du_incidents.size(), log.du_incidents.size());
    EXPECT_DOUBLE_EQ(r.nomdu, contrib.nomdu);
    EXPECT_DOUBLE_EQ(r.nomdl, contrib.nomdl);
    EXPECT_EQ(r.counts.disk_failures, log.counters.disk_failures);
}

TEST(SimulateFleet, IndependentOfThreadCountAndRepeatable) {
    ExperimentConfig c;
    c.disk = disk("diskA");
    c.disk.d_df.eta = 40000;
    c.code = CodeConfig::raid5(7);
    c.policy.hep = 0.01;
    const FleetResult a = simulate_fleet(3000, c, {.threads = 1});
    const FleetResult b = simulate_fleet(3000, c, {.threads = 7});
    const FleetResult d = simulate_fleet(3000, c, {.threads = 7});
    for (const FleetResult* x : {&b, &d}) {
        EXPECT_EQ(a.nomdu, x->nomdu);
        EXPECT_EQ(a.nomdl, x->nomdl);
        EXPECT_EQ(a.nomdu_err, x->nomdu_err);
        EXPECT_EQ(a.counts.adl, x->counts.adl);
        EXPECT_EQ(a.counts.adu, x->counts.adu);
    }
}

TEST(CountDdfCompatible, Examples) {
    IncidentLog log;
    log.code_r = 1;
    EXPECT_EQ(count_ddf_compatible(log, CompatMode::Raid5), 0u);
    for (int i = 0; i < 2; ++i) log.dl_incidents.push_back({1.0, 1.0, DlCause::ADL, 0});
    for (int i = 0; i < 3; ++i) log.dl_incidents.push_back({1.0, 1.0, DlCause::SDL, 0});
    EXPECT_EQ(count_ddf_compatible(log, CompatMode::Raid5), 5u);
    EXPECT_THROW(count_ddf_compatible(log, CompatMode::Raid6), ParameterError);
}
