#include <gtest/gtest.h>

#include <cstdlib>

#include "fsg/succinctness.hpp"

using namespace fsg;

namespace {

const ReportRow* find_row(const Report& r, const std::string& prefix) {
    for (const auto& row : r.rows)
        if (row.claim.rfind(prefix, 0) == 0) return &row;
    return nullptr;
}

}  // namespace

TEST(Succinctness, HierarchyClassSizes) {
    EXPECT_EQ(build_C(1).size(), 2u);
    EXPECT_EQ(build_C(2).size(), 4u);
    EXPECT_EQ(build_D(2).size(), 6u);
    EXPECT_EQ(build_C(3).size(), 16u);
    EXPECT_EQ(build_D(3).size(), 120u);
    EXPECT_THROW(build_C(0), InputError);
    EXPECT_THROW(build_D(4), InputError);
}

TEST(Succinctness, NotBisim) {
    for (std::size_t n = 0; n <= 3; ++n) EXPECT_TRUE(verify_notbisim(n)) << n;
    EXPECT_THROW(verify_notbisim(4), InputError);
    // One level less already collapses some pair.
    auto v = hierarchy_submodels(2);
    int collapsed = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) collapsed += n_bisimilar(v[i], v[j], 1);
    EXPECT_GT(collapsed, 0);
}

TEST(Succinctness, SizeTable) {
    auto rows = fo_ml2_size_table(10);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0].psi, 11u);
    EXPECT_EQ(rows[0].phi, 17u);
    EXPECT_EQ(rows[0].tower, "1");
    EXPECT_EQ(rows[2].tower, "4");
    EXPECT_EQ(rows[5].tower, "2^65536");
    EXPECT_EQ(rows[9].tower, "tower(9)");
    auto csv = size_table_csv(fo_ml2_size_table(3));
    EXPECT_NE(csv.find("\n3,39,45,61,4\n"), std::string::npos);
    EXPECT_THROW(fo_ml2_size_table(11), InputError);
}

TEST(Succinctness, SizeReportFlagsTheZetaClosedForm) {
    auto r = experiment_fo_ml2_sizes(6);
    for (const auto& row : r.rows) {
        bool is_zeta = row.claim.find("zeta") != std::string::npos;
        EXPECT_EQ(row.pass, !is_zeta) << row.claim << " n=" << row.n;
    }
}

TEST(Succinctness, MlLowerBoundSmall) {
    auto r1 = experiment_ml_lower_bound(1);
    EXPECT_TRUE(r1.all_pass()) << report_csv(r1);
    const auto* best = find_row(r1, "minimal separator size");
    ASSERT_NE(best, nullptr);
    EXPECT_EQ(best->computed.substr(0, 2), "7 ");
    auto r3 = experiment_ml_lower_bound(3);
    EXPECT_TRUE(r3.all_pass()) << report_csv(r3);
    EXPECT_THROW(experiment_ml_lower_bound(4), InputError);
}

TEST(Succinctness, MuLowerBound) {
    for (std::size_t n : {1u, 2u}) {
        auto r = experiment_mu_lower_bound(n);
        EXPECT_TRUE(r.all_pass()) << report_csv(r);
    }
    EXPECT_THROW(experiment_mu_lower_bound(3), InputError);
}

TEST(Succinctness, ReportsAreDeterministic) {
    auto a = report_csv(run_experiment("mu-lower-bound", 2));
    auto b = report_csv(run_experiment("mu-lower-bound", 2));
    EXPECT_EQ(a, b);
    EXPECT_EQ(report_json(run_experiment("notbisim", 2)).dump(), report_json(run_experiment("notbisim", 2)).dump());
    EXPECT_THROW(run_experiment("nope", 1), InputError);
}

TEST(Succinctness, ReportFormats) {
    Report r;
    r.add("x", 1, "a, b", "say \"hi\"", "1", true);
    r.add("x", 2, "c", "2", "3", false);
    EXPECT_EQ(report_csv(r), "experiment,n,claim,expected,computed,status\nx,1,\"a, b\",\"say \"\"hi\"\"\",1,PASS\nx,2,c,2,3,FAIL\n");
    auto j = report_json(r);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[1]["status"], "FAIL");
    EXPECT_EQ(j[0]["n"], 1);
    EXPECT_FALSE(r.all_pass());
}

TEST(Workers, ParallelForKeepsIndexOrder) {
    std::vector<int> out(100, -1);
    parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                     if (i == 7) throw InputError("boom");
                 }),
                 InputError);
}

TEST(Workers, EnvironmentOverride) {
    setenv("FSG_WORKERS", "3", 1);
    EXPECT_EQ(worker_count(), 3u);
    setenv("FSG_WORKERS", "junk", 1);
    EXPECT_GE(worker_count(), 1u);
    unsetenv("FSG_WORKERS");
}
