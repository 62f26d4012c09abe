#include <doctest.h>

#include <cmath>
#include <set>

#include "partition.hpp"
#include "rng.hpp"

using namespace stratsamp;

namespace {

// Brute-force oracle: a cell meets the box boundary when its half-open body
// contains a point of some inner face {x_k = z_k} x prod_{j!=k}[0, z_j].
std::int64_t boundary_cells_brute(const Partition& part, const AnchoredBox& box) {
    const int d = part.spec().d;
    std::int64_t count = 0;
    for (const Cell& cell : part.cells()) {
        bool hit = false;
        for (int k = 0; k < d && !hit; ++k) {
            double z = box.upper[k];
            if (z <= 0.0 || z >= 1.0) continue;
            // face coordinate along axis k
            if (z < cell.lower[k] || z >= cell.upper[k]) continue;
            bool footprint = true;
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                // cell meets [0, z_j] along axis j
                if (cell.lower[j] > box.upper[j]) { footprint = false; break; }
            }
            hit = footprint;
        }
        if (hit) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("grid(2) in d=2 has four quadrant cells") {
    auto part = build_partition(PartitionSpec::grid(2, 2));
    REQUIRE(part.size() == 4);
    for (const Cell& c : part.cells()) {
        CHECK(c.measure == doctest::Approx(0.25));
        CHECK(c.diameter() == doctest::Approx(std::sqrt(2.0) / 2.0));
    }
    // lexicographic order, last axis fastest
    CHECK(part.cells()[1].lower[0] == 0.0);
    CHECK(part.cells()[1].lower[1] == 0.5);
    CHECK(part.cells()[2].lower[0] == 0.5);
    CHECK(part.cells()[2].lower[1] == 0.0);
}

TEST_CASE("rect_grid(2,3) cells") {
    auto spec = PartitionSpec::rect_grid({2, 3});
    auto part = build_partition(spec);
    REQUIRE(part.size() == 6);
    const double expect = std::sqrt(1.0 / 4.0 + 1.0 / 9.0);
    for (const Cell& c : part.cells()) {
        CHECK(c.measure == doctest::Approx(1.0 / 6.0));
        CHECK(c.diameter() == doctest::Approx(expect));
    }
    CHECK(spec.c2() * std::pow(6.0, -0.5) == doctest::Approx(expect));
}

TEST_CASE("hsfc partition is interval cells") {
    auto part = build_partition(PartitionSpec::hsfc(2, 4));
    REQUIRE(part.size() == 4);
    for (std::int64_t i = 0; i < 4; ++i) {
        const Cell& c = part.cells()[static_cast<std::size_t>(i)];
        CHECK(c.is_interval());
        CHECK(c.a == doctest::Approx(i / 4.0));
        CHECK(c.b == doctest::Approx((i + 1) / 4.0));
    }
}

TEST_CASE("trivial partition copies the whole cube") {
    auto part = build_partition(PartitionSpec::trivial(2, 3));
    REQUIRE(part.size() == 3);
    for (const Cell& c : part.cells()) {
        CHECK(c.lower == std::vector<double>{0.0, 0.0});
        CHECK(c.upper == std::vector<double>{1.0, 1.0});
    }
}

TEST_CASE("partition spec rejections") {
    CHECK_THROWS_AS(PartitionSpec::grid(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PartitionSpec::grid(40, 10), std::invalid_argument);  // m^d overflow
    CHECK_THROWS_AS(PartitionSpec::rect_grid({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(count_boundary_cells(PartitionSpec::hsfc(2, 4), AnchoredBox{{0.5, 0.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_boundary_cells(PartitionSpec::trivial(2, 4), AnchoredBox{{0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("measure partition invariant") {
    for (const auto& spec : {PartitionSpec::grid(2, 4), PartitionSpec::rect_grid({2, 3, 5}),
                             PartitionSpec::hsfc(2, 7), PartitionSpec::trivial(3, 5)}) {
        auto part = build_partition(spec);
        double total = 0.0;
        for (const Cell& c : part.cells()) {
            total += c.measure;
            CHECK(std::abs(c.measure - 1.0 / static_cast<double>(spec.n)) <=
                  std::numeric_limits<double>::epsilon());
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("diameter certificate for grid kinds") {
    for (const auto& spec : {PartitionSpec::grid(2, 4), PartitionSpec::grid(3, 3),
                             PartitionSpec::rect_grid({2, 5}), PartitionSpec::rect_grid({4, 2, 3})}) {
        auto part = build_partition(spec);
        const double lo = spec.c1() * std::pow(static_cast<double>(spec.n), -1.0 / spec.d);
        const double hi = spec.c2() * std::pow(static_cast<double>(spec.n), -1.0 / spec.d);
        for (const Cell& c : part.cells()) {
            CHECK(c.diameter() >= lo * (1.0 - 1e-12));
            CHECK(c.diameter() <= hi * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("coverage: each random point lies in exactly one cell") {
    RngStream rng(1234);
    for (const auto& spec : {PartitionSpec::grid(2, 4), PartitionSpec::rect_grid({3, 5})}) {
        auto part = build_partition(spec);
        for (int t = 0; t < 1000; ++t) {
            Point p(spec.d);
            for (auto& x : p) x = rng.next_double();
            int owners = 0;
            for (const Cell& c : part.cells())
                if (c.contains(p)) ++owners;
            REQUIRE(owners == 1);
        }
    }
}

TEST_CASE("box_count") {
    PointSet ps(2, {0.5, 0.5});
    CHECK(box_count(ps, AnchoredBox{{0.6, 0.6}}) == 1);
    CHECK(box_count(ps, AnchoredBox{{0.5, 0.9}}) == 0);  // half-open
    RngStream rng(5);
    SUBCASE("full box counts everything") {
        std::vector<double> coords;
        for (int i = 0; i < 8; ++i) coords.push_back(rng.next_double());
        PointSet grid4(2, std::move(coords));
        CHECK(box_count(grid4, AnchoredBox{{1.0, 1.0}}) == 4);
    }
    CHECK_THROWS_AS(box_count(ps, AnchoredBox{{0.5}}), std::invalid_argument);
}

TEST_CASE("count_boundary_cells: whole cube has no inner faces") {
    CHECK(count_boundary_cells(PartitionSpec::grid(2, 4), AnchoredBox{{1.0, 1.0}}) == 0);
}

TEST_CASE("count_boundary_cells matches the brute-force oracle") {
    RngStream rng(99);
    for (const auto& spec : {PartitionSpec::grid(2, 4), PartitionSpec::grid(3, 3),
                             PartitionSpec::rect_grid({2, 6}), PartitionSpec::rect_grid({3, 4, 2})}) {
        auto part = build_partition(spec);
        // the worked example
        if (spec.kind == PartitionKind::Grid && spec.d == 2 && spec.m[0] == 4) {
            AnchoredBox half{{0.5, 0.5}};
            CHECK(count_boundary_cells(spec, half) == boundary_cells_brute(part, half));
        }
        for (int t = 0; t < 250; ++t) {
            AnchoredBox box{Point(spec.d)};
            for (auto& z : box.upper) z = rng.next_double();
            CHECK(count_boundary_cells(spec, box) == boundary_cells_brute(part, box));
        }
    }
}

TEST_CASE("boundary bound holds for 1000 random boxes per spec") {
    RngStream rng(2024);
    for (const auto& spec : {PartitionSpec::grid(2, 4), PartitionSpec::grid(2, 9),
                             PartitionSpec::grid(3, 4), PartitionSpec::rect_grid({2, 12}),
                             PartitionSpec::rect_grid({5, 3, 2})}) {
        const double bound = spec.d * spec.c2() *
                             std::pow(static_cast<double>(spec.n), 1.0 - 1.0 / spec.d);
        for (int t = 0; t < 1000; ++t) {
            AnchoredBox box{Point(spec.d)};
            for (auto& z : box.upper) z = rng.next_double();
            CHECK(static_cast<double>(count_boundary_cells(spec, box)) <= bound);
        }
    }
}

TEST_CASE("isometric grid obeys the tighter d*N^{1-1/d} count") {
    RngStream rng(77);
    for (std::int64_t m : {2, 4, 7}) {
        auto spec = PartitionSpec::grid(2, m);
        const double bound = 2.0 * static_cast<double>(m);  // d * N^{1-1/d}
        for (int t = 0; t < 500; ++t) {
            AnchoredBox box{{rng.next_double(), rng.next_double()}};
            CHECK(static_cast<double>(count_boundary_cells(spec, box)) <= bound);
        }
    }
}
