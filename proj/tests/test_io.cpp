#include <gtest/gtest.h>

#include <cstdio>

#include "genbunch/io.hpp"

using namespace genbunch;
using namespace genbunch::io;

TEST(Parse, Partition)
{
    EXPECT_EQ(parse_partition("3,1,1"), (Partition{3, 1, 1}));
    EXPECT_EQ(parse_partition(" 2, 2 "), (Partition{2, 2}));
    EXPECT_THROW(parse_partition("1,3"), validation_error);
    EXPECT_THROW(parse_partition("2,0,1"), validation_error);
    EXPECT_THROW(parse_partition("2,x"), validation_error);
    EXPECT_THROW(parse_partition(""), validation_error);
    EXPECT_THROW(parse_partition("2,,1"), validation_error);
    EXPECT_THROW(parse_partition("-1"), validation_error);
}

TEST(Parse, Sites)
{
    EXPECT_EQ(parse_sites("1,3", 3), (std::vector<int>{0, 2}));
    EXPECT_EQ(parse_sites("3,1", 3), (std::vector<int>{2, 0}));
    EXPECT_THROW(parse_sites("0,1", 3), validation_error);
    EXPECT_THROW(parse_sites("1,4", 3), validation_error);
    EXPECT_THROW(parse_sites("2,2", 3), validation_error);
}

TEST(Parse, Subset)
{
    EXPECT_EQ(parse_subset("1-4,7", 8).indices(), (std::vector<int>{0, 1, 2, 3, 6}));
    EXPECT_EQ(parse_subset("all", 3).indices(), (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(parse_subset("", 3).empty());
    EXPECT_EQ(parse_subset("3,1", 3).indices(), (std::vector<int>{0, 2}));
    EXPECT_THROW(parse_subset("4-2", 5), validation_error);
    EXPECT_THROW(parse_subset("1-9", 5), validation_error);
    EXPECT_THROW(parse_subset("0", 5), validation_error);
    EXPECT_THROW(parse_subset("1,1", 5), validation_error);
    EXPECT_THROW(parse_subset("a", 5), validation_error);
}

TEST(Parse, ProbVector)
{
    EXPECT_EQ(parse_prob_vector("0.5,0.5", false), (ProbVector{0.5, 0.5}));
    EXPECT_THROW(parse_prob_vector("1,1", false), validation_error);
    EXPECT_EQ(parse_prob_vector("1,3", true), (ProbVector{0.25, 0.75}));
    EXPECT_THROW(parse_prob_vector("-1,2", true), validation_error);
    EXPECT_THROW(parse_prob_vector("0,0", true), validation_error);
    EXPECT_THROW(parse_prob_vector("0.5,nan", false), validation_error);
    EXPECT_EQ(parse_double_list("0, 1.5,2e-3", "grid"), (std::vector<double>{0.0, 1.5, 2e-3}));
}

TEST(Json, FormatDoubleRoundTrips)
{
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const double x = std::ldexp(genbunch::detail::uniform01(rng) - 0.5, static_cast<int>(rng() % 60) - 30);
        EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
        EXPECT_EQ(json::parse(json(x).dump()).get<double>(), x);
    }
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Json, MatrixRoundTrip)
{
    Rng rng(2);
    const ComplexMatrix u = haar_unitary(rng, 4);
    const ComplexMatrix back = matrix_from_json(json::parse(to_json(u).dump()));
    EXPECT_EQ(std::memcmp(u.data(), back.data(), sizeof(complex) * 16), 0);

    const json real_only = {{"rows", 1}, {"cols", 2}, {"re", {{0.5, 1.0}}}};
    EXPECT_EQ(matrix_from_json(real_only)(0, 1), complex(1.0));
    EXPECT_THROW(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"re", {{1.0, 0.0}}}}), validation_error);
    EXPECT_THROW(matrix_from_json(json{{"rows", 1}, {"cols", 2}, {"re", {{1.0}}}}), validation_error);
    EXPECT_THROW(matrix_from_json(json::array()), validation_error);
}

TEST(Json, IrrepDistributionRoundTrip)
{
    const auto q = sw_distribution(3, ProbVector{0.5, 0.3, 0.2});
    const json j = to_json(q);
    EXPECT_TRUE(j.contains("[2,1]"));
    const auto back = irrep_distribution_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.n, 3);
    for (const auto& [lambda, p] : q.q) EXPECT_EQ(back[lambda], p);

    EXPECT_THROW(irrep_distribution_from_json(json{{"[2]", 0.5}, {"[1,1,1]", 0.5}}), validation_error);
    EXPECT_THROW(irrep_distribution_from_json(json{{"[2]", 0.5}}), validation_error);
    EXPECT_THROW(irrep_distribution_from_json(json{{"2,1", 1.0}}), validation_error);
    EXPECT_THROW(irrep_distribution_from_json(json::object()), validation_error);
}

TEST(Json, Partition)
{
    EXPECT_EQ(to_json(Partition{3, 1}).dump(), "[3,1]");
    EXPECT_EQ(partition_from_json(json::parse("[2,2,1]")), (Partition{2, 2, 1}));
    EXPECT_THROW(partition_from_json(json::parse("[1,2]")), validation_error);
    EXPECT_THROW(partition_from_json(json::parse("[1.5]")), validation_error);
}

TEST(Json, Occupation)
{
    const Occupation v{{2, 0, 1}};
    EXPECT_EQ(to_json(v).dump(), R"({"1":2,"3":1})");
    EXPECT_EQ(occupation_from_json(to_json(v), 3), v);
    EXPECT_THROW(occupation_from_json(json{{"4", 1}}, 3), validation_error);
    EXPECT_THROW(occupation_from_json(json{{"1", -1}}, 3), validation_error);

    const VisibleDistribution d{{Occupation{{1, 1}}, 0.25}};
    EXPECT_EQ(to_json(d).dump(), R"([{"occupation":{"1":1,"2":1},"probability":0.25}])");
}

TEST(Json, ReadFile)
{
    const std::string path = ::testing::TempDir() + "genbunch_io_test.json";
    {
        std::ofstream out(path);
        out << R"({"a": 1})";
    }
    EXPECT_EQ(read_json_file(path).at("a").get<int>(), 1);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    EXPECT_THROW(read_json_file(path), validation_error);
    std::remove(path.c_str());
    EXPECT_THROW(read_json_file(path), validation_error);
}

TEST(Csv, CharacterTable)
{
    const std::string csv = character_table_csv(character_table(3));
    EXPECT_EQ(csv,
              "irrep,\"3\",\"2,1\",\"1,1,1\"\n"
              "class_size,2,3,1\n"
              "\"3\",1,1,1\n"
              "\"2,1\",-1,0,2\n"
              "\"1,1,1\",1,-1,1\n");
}

TEST(Csv, ThermoCurve)
{
    const auto curve = thermo_curve(EnergySpectrum({0.0, 1.0}), 2, 4, 2, {0.0, 1.0});
    const std::string csv = thermo_curve_csv(curve);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "beta,mean_bunching");
    EXPECT_NE(csv.find("0,0.26666666666666"), std::string::npos);
}
