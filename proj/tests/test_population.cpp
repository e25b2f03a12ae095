#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>

#include <tspga/population.hpp>
#include <tspga/rng.hpp>
#include <tspga/tsplib.hpp>

#include "oracles.hpp"

using namespace tspga;

namespace {

const std::string kData = TSPGA_DATA_DIR;

DistanceMatrix triangle() {
    Instance inst;
    inst.dimension = 3;
    inst.coords = {{0, 0}, {3, 0}, {0, 4}};
    return build_distance_matrix(inst);
}

} // namespace

TEST(RngStream, ReplaysForSameSeed) {
    RngStream a(123);
    RngStream b(123);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.uniform_index(0, 1000), b.uniform_index(0, 1000));
        ASSERT_EQ(a.uniform_real(), b.uniform_real());
    }
}

TEST(RngStream, RangesAreRespected) {
    RngStream rng(5);
    for (int i = 0; i < 10000; ++i) {
        const auto v = rng.uniform_index(3, 7);
        ASSERT_GE(v, 3u);
        ASSERT_LE(v, 7u);
        const double r = rng.uniform_real();
        ASSERT_GE(r, 0.0);
        ASSERT_LT(r, 1.0);
    }
    EXPECT_EQ(rng.uniform_index(4, 4), 4u);
    EXPECT_THROW(rng.uniform_index(5, 4), ContractError);
}

TEST(DeriveSeed, DistinctRootsDoNotShareRunStreams) {
    std::map<std::uint64_t, int> seen;
    for (std::uint64_t root = 0; root < 8; ++root) {
        for (std::uint64_t run = 0; run < 64; ++run) {
            ++seen[derive_seed(root, run, StreamPurpose::Evolution)];
            ++seen[derive_seed(root, run, StreamPurpose::InitialPopulation)];
        }
    }
    EXPECT_EQ(seen.size(), 8u * 64u * 2u);
}

TEST(ScriptedDraws, ReplaysAndReportsExhaustion) {
    ScriptedDraws s({2, 0}, {0.25});
    EXPECT_EQ(s.uniform_index(0, 3), 2u);
    EXPECT_THROW(s.uniform_index(1, 3), ContractError);
    EXPECT_DOUBLE_EQ(s.uniform_real(), 0.25);
    EXPECT_THROW(s.uniform_real(), std::out_of_range);
}

TEST(RandomTour, TwoCitiesBothOrdersEquallyLikely) {
    RngStream rng(1);
    int forward = 0;
    const int samples = 20000;
    for (int i = 0; i < samples; ++i) {
        const Tour t = random_tour(2, rng);
        ASSERT_TRUE(oracle::is_permutation(t, 2));
        forward += t[0] == 0 ? 1 : 0;
    }
    const double sigma = oracle::binomial_sigma(0.5, samples);
    EXPECT_NEAR(forward / double(samples), 0.5, 3 * sigma);
}

TEST(RandomTour, DeterministicForFixedSeed) {
    RngStream a(99);
    RngStream b(99);
    const Tour first = random_tour(5, a);
    EXPECT_EQ(first, random_tour(5, b));
    EXPECT_TRUE(oracle::is_permutation(first, 5));
}

TEST(RandomTour, RejectsTinyInstances) {
    RngStream rng(0);
    EXPECT_THROW(random_tour(1, rng), ContractError);
    EXPECT_THROW(random_tour(0, rng), ContractError);
}

TEST(RandomTour, FourCityPermutationsAreUniform) {
    RngStream rng(2024);
    std::map<Tour, std::size_t> counts;
    const std::size_t samples = 100000;
    for (std::size_t i = 0; i < samples; ++i) {
        ++counts[random_tour(4, rng)];
    }
    ASSERT_EQ(counts.size(), 24u);
    std::vector<std::size_t> observed;
    const double p = 1.0 / 24.0;
    const double sigma = oracle::binomial_sigma(p, samples);
    for (const auto& [tour, c] : counts) {
        observed.push_back(c);
        EXPECT_NEAR(c / double(samples), p, 3 * sigma);
    }
    EXPECT_LT(oracle::chi_square_uniform(observed), oracle::kChiSquare23At001);
}

TEST(InitPopulation, SizesAndValidity) {
    GaConfig cfg;
    cfg.population_size = 50;
    RngStream rng(8);
    const auto pop = init_population(cfg, 52, rng);
    ASSERT_EQ(pop.size(), 50u);
    EXPECT_FALSE(pop.evaluated());
    for (const auto& t : pop.members) {
        EXPECT_TRUE(oracle::is_permutation(t, 52));
    }

    cfg.population_size = 1;
    cfg.elitism_count = 0;
    EXPECT_EQ(init_population(cfg, 5, rng).size(), 1u);
}

TEST(InitPopulation, SameSeedSamePopulation) {
    GaConfig cfg;
    RngStream a(4);
    RngStream b(4);
    EXPECT_EQ(init_population(cfg, 20, a).members, init_population(cfg, 20, b).members);
}

TEST(Evaluate, FillsCacheAndIsIdempotent) {
    const auto dm = triangle();
    Population pop;
    pop.members = {{0, 1, 2}, {2, 1, 0}};
    const auto once = evaluate(pop, dm);
    EXPECT_EQ(once.lengths, (std::vector<TourLength>{12, 12}));
    const auto twice = evaluate(once, dm);
    EXPECT_EQ(twice.lengths, once.lengths);
    EXPECT_EQ(twice.members, pop.members);
}

TEST(Evaluate, Berlin52OptimumCachedAs7542) {
    const auto dm = build_distance_matrix(load_instance(kData + "/berlin52.tsp"));
    RngStream rng(1);
    Population pop;
    pop.members.push_back(random_tour(52, rng));
    pop.members.push_back(load_tour(kData + "/berlin52.opt.tour"));
    const auto ev = evaluate(pop, dm);
    EXPECT_EQ(ev.lengths[1], 7542);
    EXPECT_GT(ev.lengths[0], 7542);
    EXPECT_EQ(ev.best_index(), 1u);
}

TEST(Evaluate, DimensionMismatch) {
    const auto dm = triangle();
    Population pop;
    pop.members = {{0, 1, 2, 3}};
    EXPECT_THROW(evaluate(pop, dm), ContractError);
    EXPECT_THROW(evaluate(Population{}, dm), ContractError);
}

TEST(FitnessOf, ReciprocalAndMonotone) {
    EXPECT_DOUBLE_EQ(fitness_of(7542), 1.0 / 7542.0);
    EXPECT_GT(fitness_of(100), fitness_of(101));
    EXPECT_EQ(fitness_of(300), fitness_of(300));
    EXPECT_THROW(fitness_of(0), ContractError);
    EXPECT_THROW(fitness_of(-5), ContractError);
}

TEST(GaConfig, Validation) {
    GaConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.mutation_rate = 1.5;
    EXPECT_THROW(cfg.validate(), ContractError);
    cfg = GaConfig{};
    cfg.crossover_rate = -0.1;
    EXPECT_THROW(cfg.validate(), ContractError);
    cfg = GaConfig{};
    cfg.elitism_count = cfg.population_size;
    EXPECT_THROW(cfg.validate(), ContractError);
    cfg = GaConfig{};
    cfg.population_size = 0;
    EXPECT_THROW(cfg.validate(), ContractError);
}

TEST(MutationOperator, NamesRoundTrip) {
    for (auto op : {MutationOperator::Rsm, MutationOperator::Psm, MutationOperator::Hprm}) {
        EXPECT_EQ(parse_mutation_operator(to_string(op)), op);
    }
    EXPECT_EQ(parse_mutation_operator("HPRM"), MutationOperator::Hprm);
    EXPECT_FALSE(parse_mutation_operator("gsm"));
}
