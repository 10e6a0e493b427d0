#pragma once

#include <array>
#include <string_view>
#include <vector>

// Published 2x3 number-conserving tables with their (omega, lambda) reading.
// Identity-omega rows use unshifted traffic, shift-up rows use shifted traffic.
struct GoldenRow {
    std::string_view hex;
    std::string_view omega;
    std::vector<std::string_view> left;
    std::vector<std::string_view> right;
};

inline const std::vector<GoldenRow>& golden_2x3_rows() {
    static const std::vector<GoldenRow> rows{
        {"FFFF0000FFFF0000", "id", {}, {}},
        {"FF00FF00FF00FF00", "shift:left", {}, {}},
        {"FFFFFFFF00000000", "shift:right", {}, {}},
        {"CCCCCCCCCCCCCCCC", "shift:up", {}, {}},
        {"AAAAAAAAAAAAAAAA", "shift:up-left", {}, {}},
        {"F0F0F0F0F0F0F0F0", "shift:up-right", {}, {}},
        {"FFFF1100FCFC1100", "id", {"00"}, {}},
        {"FFFF2200F3F32200", "id", {"01"}, {}},
        {"FFFF4400CFCF4400", "id", {"10"}, {}},
        {"FFFF88003F3F8800", "id", {"11"}, {}},
        {"FFFF3300F0F03300", "id", {"00", "01"}, {}},
        {"FFFF5500CCCC5500", "id", {"00", "10"}, {}},
        {"FFFF99003C3C9900", "id", {"00", "11"}, {}},
        {"FFFF6600C3C36600", "id", {"01", "10"}, {}},
        {"FFFFAA003333AA00", "id", {"01", "11"}, {}},
        {"FFFFCC000F0FCC00", "id", {"10", "11"}, {}},
        {"FFFF7700C0C07700", "id", {"00", "01", "10"}, {}},
        {"FFFFBB003030BB00", "id", {"00", "01", "11"}, {}},
        {"FFFFDD000C0CDD00", "id", {"00", "10", "11"}, {}},
        {"FFFFEE000303EE00", "id", {"01", "10", "11"}, {}},
        {"FFFFFF000000FF00", "id", {"00", "01", "10", "11"}, {}},
        {"FFEE0303FFEE0000", "id", {}, {"00"}},
        {"FFDD0C0CFFDD0000", "id", {}, {"01"}},
        {"FFBB3030FFBB0000", "id", {}, {"10"}},
        {"FF77C0C0FF770000", "id", {}, {"11"}},
        {"FFCC0F0FFFCC0000", "id", {}, {"00", "01"}},
        {"FFAA3333FFAA0000", "id", {}, {"00", "10"}},
        {"FF66C3C3FF660000", "id", {}, {"00", "11"}},
        {"FF993C3CFF990000", "id", {}, {"01", "10"}},
        {"FF55CCCCFF550000", "id", {}, {"01", "11"}},
        {"FF33F0F0FF330000", "id", {}, {"10", "11"}},
        {"FF883F3FFF880000", "id", {}, {"00", "01", "10"}},
        {"FF44CFCFFF440000", "id", {}, {"00", "01", "11"}},
        {"FF22F3F3FF220000", "id", {}, {"00", "10", "11"}},
        {"FF11FCFCFF110000", "id", {}, {"01", "10", "11"}},
        {"FF00FFFFFF000000", "id", {}, {"00", "01", "10", "11"}},
        {"FF77D1C0FC741100", "id", {"00"}, {"11"}},
        {"FFDD2E0CF3D12200", "id", {"01"}, {"01"}},
        {"FFBB7430CF8B4400", "id", {"10"}, {"10"}},
        {"FFFF8B033F2E8800", "id", {"11"}, {"00"}},
        {"CCCCCCEECCCCC0E2", "shift:up", {"00"}, {}},
        {"CCCCEECCC0C0EECC", "shift:up", {"01"}, {}},
        {"CCEEC0C0CCEECCCC", "shift:up", {"10"}, {}},
        {"E2C0CCCCEECCCCCC", "shift:up", {"11"}, {}},
        {"CCCCEEEEC0C0E2E2", "shift:up", {"00", "01"}, {}},
        {"CCEEC0E2CCEEC0E2", "shift:up", {"00", "10"}, {}},
        {"E2C0CCEEEECCC0E2", "shift:up", {"00", "11"}, {}},
        {"CCEEE2C0C0E2EECC", "shift:up", {"01", "10"}, {}},
        {"E2C0EECCE2C0EECC", "shift:up", {"01", "11"}, {}},
        {"E2E2C0C0EEEECCCC", "shift:up", {"10", "11"}, {}},
        {"CCEEE2E2C0E2E2E2", "shift:up", {"00", "01", "10"}, {}},
        {"E2C0EEEEE2C0E2E2", "shift:up", {"00", "01", "11"}, {}},
        {"E2E2C0E2EEEEC0E2", "shift:up", {"00", "10", "11"}, {}},
        {"E2E2E2C0E2E2EECC", "shift:up", {"01", "10", "11"}, {}},
        {"E2E2E2E2E2E2E2E2", "shift:up", {"00", "01", "10", "11"}, {}},
        {"CCCCCC88CCCCFCB8", "shift:up", {}, {"00"}},
        {"CCCC88CCFCFC88CC", "shift:up", {}, {"01"}},
        {"CC88FCFCCC88CCCC", "shift:up", {}, {"10"}},
        {"B8FCCCCC88CCCCCC", "shift:up", {}, {"11"}},
        {"CCCC8888FCFCB8B8", "shift:up", {}, {"00", "01"}},
        {"CC88FCB8CC88FCB8", "shift:up", {}, {"00", "10"}},
        {"B8FCCC8888CCFCB8", "shift:up", {}, {"00", "11"}},
        {"CC88B8FCFCB888CC", "shift:up", {}, {"01", "10"}},
        {"B8FC88CCB8FC88CC", "shift:up", {}, {"01", "11"}},
        {"B8B8FCFC8888CCCC", "shift:up", {}, {"10", "11"}},
        {"CC88B8B8FCB8B8B8", "shift:up", {}, {"00", "01", "10"}},
        {"B8FC8888B8FCB8B8", "shift:up", {}, {"00", "01", "11"}},
        {"B8B8FCB88888FCB8", "shift:up", {}, {"00", "10", "11"}},
        {"B8B8B8FCB8B888CC", "shift:up", {}, {"01", "10", "11"}},
        {"B8B8B8B8B8B8B8B8", "shift:up", {}, {"00", "01", "10", "11"}},
        {"B8FCCCEE88CCC0E2", "shift:up", {"00"}, {"11"}},
        {"CCCCAACCF0F0AACC", "shift:up", {"01"}, {"01"}},
        {"CCAAF0F0CCAACCCC", "shift:up", {"10"}, {"10"}},
        {"E2C0CC88EECCFCB8", "shift:up", {"11"}, {"00"}},
    };
    return rows;
}

inline constexpr std::string_view ca_d_hex =
    "FCFC0CFFFFFF0CFF FC300C00FF330C00 FCFCFCF000000C00 FC30FCF0FF330C00 "
    "FCFC0CFFFFFF0CFF FC300C00FF330C00 FCFCFCF000000C00 FC30FCF0FF330C00";

// The printed string for the Id row with left {11} and right {00} creates
// a particle (two adjacent particles in a row gain a third); the rule compiles to
// the corrected string, which differs in the second byte only.
inline constexpr std::string_view misprinted_hex = "FFFF8B033F2E8800";
inline constexpr std::string_view corrected_hex = "FFEE8B033F2E8800";

inline std::string_view expected_hex(const GoldenRow& row) {
    return row.hex == misprinted_hex ? corrected_hex : row.hex;
}
