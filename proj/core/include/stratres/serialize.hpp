#pragma once

#include <filesystem>
#include <string>

#include "stratres/phase.hpp"
#include "stratres/profile.hpp"
#include "stratres/resistance.hpp"

namespace stratres {

// 17 significant digits, locale-independent; round-trips doubles exactly.
std::string format_double(double v);

// CSV schemas (headers mandatory):
//   profiles:          r,u,du
//   orbits:            tau,x,theta,y
//   resistance tables: lambda,E,err
std::string profile_to_csv(const RadialProfile& profile);
RadialProfile profile_from_csv(const std::string& text);

std::string orbit_to_csv(const Orbit& orbit);

std::string demo_table_to_csv(const std::vector<ConeDemoRow>& rows);

// Writes via a temp file in the target directory plus rename, so readers
// never observe a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace stratres
