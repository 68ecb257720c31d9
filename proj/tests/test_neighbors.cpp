#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "somm/neighbors.hpp"
#include "somm/rng.hpp"

using namespace somm;

namespace {

Dataset random_train(Rng& rng, std::size_t rows, std::size_t cols) {
    Dataset d;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(cols);
        for (auto& v : row) v = rng.uniform();
        d.features.append_row(row);
        d.labels.push_back(rng.uniform() < 0.3 ? 1 : 0);
    }
    return d;
}

// full sort over all rows, same tie rule: by distance, then by row index
std::vector<int> brute_force_order(const std::vector<double>& query,
                                   const Dataset& train) {
    std::vector<int> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> dist(train.size());
    for (std::size_t r = 0; r < train.size(); ++r)
        dist[r] = euclidean_distance(query, train.features.row(r));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;
    });
    return order;
}

}  // namespace

TEST_CASE("euclidean_distance on a 3-4-5 triangle") {
    CHECK(euclidean_distance(std::vector<double>{0, 0},
                             std::vector<double>{3, 4}) == 5.0);
}

TEST_CASE("euclidean_distance of a point to itself is zero") {
    const std::vector<double> a{1.5, -2.25, 7.0};
    CHECK(euclidean_distance(a, a) == 0.0);
}

TEST_CASE("euclidean_distance matches the direct formula") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(10), b(10);
        for (auto& v : a) v = rng.uniform_in(-10, 10);
        for (auto& v : b) v = rng.uniform_in(-10, 10);
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            sum += (a[i] - b[i]) * (a[i] - b[i]);
        CHECK(std::abs(euclidean_distance(a, b) - std::sqrt(sum)) < 1e-12);
    }
}

TEST_CASE("euclidean_distance rejects length mismatches") {
    CHECK_THROWS_AS(euclidean_distance(std::vector<double>{1.0},
                                       std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("k_nearest finds a training point under itself") {
    Dataset train;
    train.features = Matrix::from_rows({{0.1, 0.2}, {0.7, 0.8}});
    train.labels = {0, 1};
    const std::vector<double> query{0.7, 0.8};
    const NeighborSet nn = k_nearest(query, train, 1, 1);
    REQUIRE(nn.indices.size() == 1);
    CHECK(nn.indices[0] == 1);
    CHECK(nn.distances[0] == 0.0);
    CHECK(nn.is_minority[0]);
    CHECK(nn.first_minority == 0);
}

TEST_CASE("k_nearest orders a small 1-d neighborhood") {
    Dataset train;
    train.features = Matrix::from_rows({{0.0}, {0.5}, {1.0}});
    train.labels = {0, 1, 0};
    const std::vector<double> query{0.45};
    const NeighborSet nn = k_nearest(query, train, 1, 3);
    CHECK(nn.indices == std::vector<int>{1, 0, 2});
    CHECK(nn.distances[0] == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(nn.distances[1] == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(nn.distances[2] == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(nn.is_minority == std::vector<bool>{true, false, false});
    CHECK(nn.first_minority == 0);
}

TEST_CASE("k_nearest breaks distance ties by lower row index") {
    Dataset train;
    train.features = Matrix::from_rows({{1.0}, {-1.0}, {1.0}, {-1.0}});
    train.labels = {0, 0, 1, 1};
    const std::vector<double> query{0.0};
    const NeighborSet nn = k_nearest(query, train, 1, 4);
    CHECK(nn.indices == std::vector<int>{0, 1, 2, 3});
    const NeighborSet again = k_nearest(query, train, 1, 4);
    CHECK(nn.indices == again.indices);
}

TEST_CASE("k_nearest validates k") {
    Dataset train;
    train.features = Matrix::from_rows({{0.0}, {1.0}});
    train.labels = {0, 1};
    const std::vector<double> query{0.5};
    CHECK_THROWS_AS(k_nearest(query, train, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(k_nearest(query, train, 1, 3), std::invalid_argument);
}

TEST_CASE("k_nearest equals the brute-force full sort") {
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 5 + rng.uniform_index(60);
        const Dataset train = random_train(rng, rows, 3);
        std::vector<double> query(3);
        for (auto& v : query) v = rng.uniform();
        const int k = 1 + static_cast<int>(rng.uniform_index(rows));

        const NeighborSet nn = k_nearest(query, train, 1, k);
        const auto full = brute_force_order(query, train);
        REQUIRE(nn.indices.size() == static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) CHECK(nn.indices[i] == full[i]);
    }
}

TEST_CASE("neighbor sets satisfy their ordering invariants") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Dataset train = random_train(rng, 30, 2);
        std::vector<double> query{rng.uniform(), rng.uniform()};
        const NeighborSet nn = k_nearest(query, train, 1, 10);

        REQUIRE(nn.indices.size() == nn.distances.size());
        REQUIRE(nn.indices.size() == nn.is_minority.size());
        for (std::size_t i = 1; i < nn.distances.size(); ++i)
            CHECK(nn.distances[i] >= nn.distances[i - 1]);
        for (std::size_t i = 0; i < nn.indices.size(); ++i)
            CHECK(nn.is_minority[i] == (train.labels[nn.indices[i]] == 1));
        if (nn.first_minority) {
            const int b = *nn.first_minority;
            CHECK(nn.is_minority[b]);
            for (int j = 0; j < b; ++j) CHECK_FALSE(nn.is_minority[j]);
        } else {
            for (std::size_t i = 0; i < nn.is_minority.size(); ++i)
                CHECK_FALSE(nn.is_minority[i]);
        }
    }
}
