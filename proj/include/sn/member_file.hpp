#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sn/closure.hpp"
#include "sn/nat.hpp"

namespace sn {

inline constexpr const char* kGeneratorVersion = "sn 0.1.0";

struct MemberFile {
    Nat k{1};
    uint64_t z = 0;
    bool complete = false;
    std::string generator = kGeneratorVersion;
    std::vector<Nat> members;  // strictly increasing

    NeighborSet to_set() const { return {z, k, members}; }
};

// Text format, byte-stable round trip:
//   # smooth-neighbors members
//   # k <decimal>
//   # z <decimal>
//   # complete <0|1>
//   # generator <text>
//   <one decimal member per line, strictly increasing>
MemberFile read_member_file(const std::string& path);
void write_member_file(const MemberFile& f, const std::string& path);

// Minimal CSV with a header row; all cells rendered as plain strings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace sn
