#pragma once

// Published representatives of the twelve semifield planes of order 81 and
// their automorphism, autotopy and isotope-inventory data.

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "semifield/rational.hpp"

namespace semifield {

struct KnownPlaneFixture {
    std::string_view label;
    std::array<std::uint64_t, 3> codes;  // (a2, a3, a4)
    std::uint64_t expected_aut;
    std::uint64_t expected_at;
    std::map<std::uint64_t, std::uint64_t> expected_inventory;  // aut order -> class count
    bool known;  // false for planes first found by the exhaustive search

    Fraction expected_sa() const {
        Fraction s;
        for (const auto& [aut, count] : expected_inventory) s += Fraction(count, aut);
        return s;
    }
};

inline const std::vector<KnownPlaneFixture>& plane_fixtures_81() {
    static const std::vector<KnownPlaneFixture> fixtures = {
        {"I", {19792, 8866, 186745}, 4, 25600, {{4, 1}}, true},
        {"II", {19792, 30332, 214473}, 1, 640, {{1, 10}}, true},
        {"III", {19818, 9001, 355161}, 4, 512, {{1, 12}, {4, 2}}, true},
        {"IV", {19794, 428919, 473210}, 8, 2048, {{2, 6}, {8, 1}}, true},
        {"V", {19801, 191026, 186259}, 4, 1024, {{1, 6}, {4, 1}}, true},
        {"VI", {19794, 409289, 130416}, 2, 128, {{1, 42}, {2, 16}}, true},
        {"VII", {19794, 519711, 29089}, 1, 64, {{1, 100}}, true},
        {"VIII", {19825, 253482, 243782}, 4, 256, {{1, 24}, {2, 1}, {4, 2}}, false},
        {"IX", {19792, 8841, 198942}, 1, 32, {{1, 200}}, false},
        {"X", {19792, 8956, 202821}, 1, 32, {{1, 200}}, false},
        {"XI", {19792, 8956, 408532}, 1, 16, {{1, 400}}, false},
        {"XII", {19792, 8984, 461005}, 1, 64, {{1, 100}}, false},
    };
    return fixtures;
}

/// The commutative isotope of Dickson's semifield, given with A_1 explicit.
inline constexpr std::array<std::uint64_t, 4> kCommutativeIsotope81 = {59293, 19818, 12291, 359225};

}  // namespace semifield
