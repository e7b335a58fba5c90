#include <array>
#include <map>
#include <random>

#include "doctest.h"
#include "boolnl/errors.hpp"
#include "boolnl/fitness.hpp"
#include "boolnl/walsh.hpp"
#include "oracles.hpp"

using namespace boolnl;

namespace {

TruthTable random_table(int n, std::mt19937_64& gen) {
    TruthTable t(n);
    for (auto& w : t.words()) w = gen();
    t.words().back() &= t.tail_mask();
    return t;
}

// x0 x1 xor x2 x3, with x_k = bit k of the index.
TruthTable bent4() {
    TruthTable t(4);
    for (std::size_t x = 0; x < 16; ++x) {
        const bool v = ((x & 1) && (x & 2)) != ((x & 4) && (x & 8));
        t.set(x, v);
    }
    return t;
}

std::vector<std::int32_t> coeffs_of(const WalshSpectrum& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

}  // namespace

TEST_CASE("truth table basics") {
    TruthTable t(3);
    CHECK(t.size() == 8);
    CHECK(t.weight() == 0);
    t.set(0, true);
    CHECK(t.to_hex() == "01");
    t.set(7, true);
    CHECK(t.to_hex() == "81");
    CHECK(TruthTable::from_hex(3, "81") == t);
    CHECK(TruthTable::ones(4).weight() == 16);
    CHECK(TruthTable::ones(4).to_hex() == "ffff");
    CHECK_THROWS_AS(TruthTable(0), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable(17), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable::from_hex(3, "1"), std::invalid_argument);
    CHECK_THROWS_AS(TruthTable::from_hex(3, "zz"), std::invalid_argument);
    const std::array<std::uint8_t, 8> bits{1, 0, 0, 0, 0, 0, 0, 1};
    CHECK(TruthTable::from_bits(3, bits) == t);
}

TEST_CASE("hex serialization round-trips") {
    std::mt19937_64 gen(11);
    for (int n : {1, 2, 3, 5, 6, 7, 9}) {
        for (int k = 0; k < 20; ++k) {
            const auto t = random_table(n, gen);
            CHECK(TruthTable::from_hex(n, t.to_hex()) == t);
        }
    }
}

TEST_CASE("rotation moves bit k to k - r") {
    std::mt19937_64 gen(5);
    for (int n : {3, 6, 7, 8}) {
        const auto t = random_table(n, gen);
        for (std::size_t r : {std::size_t{1}, std::size_t{3}, t.size() / 2, t.size() - 1, std::size_t{65} % t.size()}) {
            const auto rot = t.rotated_left(r);
            for (std::size_t k = 0; k < t.size(); ++k) {
                CHECK(rot.get((k + t.size() - r) % t.size()) == t.get(k));
            }
            CHECK(rot.weight() == t.weight());
        }
    }
}

TEST_CASE("walsh transform examples") {
    CHECK(coeffs_of(walsh_transform(TruthTable(3))) == std::vector<std::int32_t>{8, 0, 0, 0, 0, 0, 0, 0});

    TruthTable bit0(3);
    for (std::size_t x = 0; x < 8; ++x) bit0.set(x, x & 1);
    CHECK(coeffs_of(walsh_transform(bit0)) == std::vector<std::int32_t>{0, 8, 0, 0, 0, 0, 0, 0});

    const auto bent = walsh_transform(bent4());
    CHECK(bent == walsh_transform_naive(bent4()));
    for (auto c : bent.coeffs()) CHECK(std::abs(c) == 4);
}

TEST_CASE("butterfly agrees with the defining sum") {
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const auto t = oracle::from_index(3, idx);
        const auto fast = walsh_transform(t);
        REQUIRE(fast == walsh_transform_naive(t));
        for (std::size_t a = 0; a < 8; ++a) REQUIRE(fast[a] == oracle::walsh_coefficient(t, a));
    }
    std::mt19937_64 gen(2024);
    for (int k = 0; k < 1000; ++k) {
        const auto t = random_table(8, gen);
        REQUIRE(walsh_transform(t) == walsh_transform_naive(t));
    }
}

TEST_CASE("inverse transform") {
    const auto zero = inverse_walsh(WalshSpectrum(3, {8, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(zero == TruthTable(3));

    CHECK_THROWS_AS(inverse_walsh(WalshSpectrum(3, {4, 4, 4, 4, 4, 4, 4, 4})), NotABooleanSpectrum);
    CHECK_THROWS_AS(WalshSpectrum(3, {1, 2}), DimensionMismatch);

    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const auto t = oracle::from_index(3, idx);
        REQUIRE(inverse_walsh(walsh_transform(t)) == t);
    }
    std::mt19937_64 gen(8);
    for (int k = 0; k < 500; ++k) {
        const auto t = random_table(8, gen);
        REQUIRE(inverse_walsh(walsh_transform(t)) == t);
    }
}

TEST_CASE("parseval and coefficient parity") {
    std::mt19937_64 gen(3);
    for (int n : {3, 4, 7, 10}) {
        for (int k = 0; k < 50; ++k) {
            const auto s = walsh_transform(random_table(n, gen));
            REQUIRE(satisfies_parseval(s));
            for (auto c : s.coeffs()) {
                REQUIRE(c % 2 == 0);
                REQUIRE(std::abs(c) <= static_cast<std::int32_t>(s.size()));
            }
        }
    }
}

TEST_CASE("nonlinearity examples") {
    CHECK(nonlinearity(walsh_transform(TruthTable(3))) == 0);
    CHECK(nonlinearity(walsh_transform(bent4())) == 6);
    CHECK(oracle::nonlinearity_by_distance(bent4()) == 6);
}

TEST_CASE("nonlinearity matches the distance definition") {
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const auto t = oracle::from_index(3, idx);
        REQUIRE(nonlinearity(walsh_transform(t)) == oracle::nonlinearity_by_distance(t));
    }
    std::mt19937_64 gen(99);
    for (int k = 0; k < 100; ++k) {
        const auto t = random_table(6, gen);
        REQUIRE(nonlinearity(walsh_transform(t)) == oracle::nonlinearity_by_distance(t));
    }
}

TEST_CASE("n=4 nonlinearity census") {
    // Frozen from the distance oracle (exhaustive enumeration below).
    const std::array<int, 7> expected{32, 512, 3840, 17920, 28000, 14336, 896};
    std::array<int, 7> counts{};
    for (std::uint64_t idx = 0; idx < 65536; ++idx) {
        const auto t = oracle::from_index(4, idx);
        const int nl = nonlinearity(walsh_transform(t));
        REQUIRE(nl <= 6);
        ++counts[nl];
        // Every 16th function is also checked against the definition.
        if (idx % 16 == 0) REQUIRE(nl == oracle::nonlinearity_by_distance(t));
    }
    CHECK(counts == expected);
}

TEST_CASE("covering radius bound") {
    CHECK(covering_radius_bound(4).floor() == 6);
    CHECK(covering_radius_bound(4).is_integral());
    CHECK(covering_radius_bound(8).floor() == 120);
    const auto b3 = covering_radius_bound(3);
    CHECK_FALSE(b3.is_integral());
    CHECK(b3.to_string() == "4 - sqrt(2)");
    CHECK(b3.value() == doctest::Approx(4.0 - std::sqrt(2.0)));
    CHECK(b3.floor() == 2);
    CHECK(covering_radius_bound(5).floor() == 13);
    CHECK(covering_radius_bound(5).to_string() == "16 - 2*sqrt(2)");
    CHECK(covering_radius_bound(1).floor() == 0);
    CHECK(covering_radius_bound(1).value() == doctest::Approx(1.0 - std::sqrt(0.5)));
    for (int n = 1; n <= 16; ++n) {
        const auto b = covering_radius_bound(n);
        CHECK(static_cast<double>(b.floor()) <= b.value());
        CHECK(static_cast<double>(b.floor() + 1) > b.value());
    }
}

TEST_CASE("fitness functions") {
    const auto zero_f1 = fitness1(TruthTable(3));
    CHECK(zero_f1.value() == 0.0);
    CHECK(fitness2(TruthTable(3)).value() == doctest::Approx(0.875));
    CHECK(fitness1(bent4()).value() == 6.0);
    CHECK(fitness2(bent4()).value() == 6.0);

    TruthTable bit0(3);
    for (std::size_t x = 0; x < 8; ++x) bit0.set(x, x & 1);
    CHECK(fitness2(bit0).value() == doctest::Approx(0.875));
    CHECK(fitness2(bit0).refinement_numerator() == 7);

    // Integer part of fitness 2 is fitness 1; refinement stays below 1.
    for (std::uint64_t idx = 0; idx < 65536; idx += 7) {
        const auto t = oracle::from_index(4, idx);
        const auto f1 = fitness1(t);
        const auto f2 = fitness2(t);
        REQUIRE(f1.nl() == f2.nl());
        REQUIRE(f1.refinement_numerator() == 0);
        REQUIRE(f2.refinement() < 1.0);
        REQUIRE(f1 <= f2);
        REQUIRE(f1.value() <= 6.0);
    }
}

TEST_CASE("fitness ordering is exact") {
    CHECK(FitnessValue(3, 1, 8) == FitnessValue(3, 2, 16));
    CHECK(FitnessValue(3, 1, 8) < FitnessValue(3, 3, 16));
    CHECK(FitnessValue(2, 7, 8) < FitnessValue(3, 0, 8));
    CHECK_THROWS(FitnessValue(1, 8, 8));
}

TEST_CASE("spectrum delta application") {
    const auto base = walsh_transform(TruthTable(3));
    // Setting bit 0 of the zero function, cross-checked with a full transform.
    TruthTable set0(3);
    set0.set(0, true);
    const DeltaVector delta{3, {-2, -2, -2, -2, -2, -2, -2, -2}};
    const auto updated = apply_spectrum_delta(base, delta);
    CHECK(coeffs_of(updated) == std::vector<std::int32_t>{6, -2, -2, -2, -2, -2, -2, -2});
    CHECK(updated == walsh_transform(set0));

    CHECK(apply_spectrum_delta(base, DeltaVector{3, std::vector<std::int32_t>(8, 0)}) == base);
    CHECK(apply_spectrum_delta(apply_spectrum_delta(base, delta), -delta) == base);
    CHECK_THROWS_AS(apply_spectrum_delta(base, DeltaVector{3, {1}}), DimensionMismatch);
}

TEST_CASE("spectrum json") {
    CHECK(to_json(walsh_transform(TruthTable(3))) == "[8,0,0,0,0,0,0,0]");
}
