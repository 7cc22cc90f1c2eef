#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "weightlab/czlab.hpp"
#include "weightlab/grid.hpp"
#include "weightlab/matrix.hpp"
#include "weightlab/segment_weight.hpp"
#include "weightlab/suites.hpp"
#include "weightlab/weightclass.hpp"
#include "weightlab/young.hpp"

namespace weightlab {

/// Raised for malformed input documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kReportSchema = "weightlab-report/1";

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// {"dim":1,"segments":[{"lo":0,"hi":1,"form":"power","c":1,"a":0,"gamma":0.5},
//  {"lo":1,"hi":"inf","form":"exp","c":1,"s":-1}],"tail":"zero"|"extend"}
SegmentWeight1D parse_weight(const std::string& text);
// {"dim":1,"entries":[2]} or {"dim":2,"entries":[a00,a01,a10,a11]}
SquareMatrix parse_matrix(const std::string& text);
// {"levels":[0,6],"shifts":2,"box":[lo,hi]} (2D box: [x0,y0,x1,y1]), optional
// "extra":[{"corner":[..],"side":s}]
CubeFamily parse_family(const std::string& text);
// {"kind":"power","r":2}, {"kind":"bump","p":2,"eps":0.5}, {"kind":"legendre","base":{...}}, ...
YoungFn parse_young(const std::string& text);
// {"dim":1,"lo":[-1],"side":2,"values":[...]}; 2D values are row-major with n*n entries
GridFunction parse_grid(const std::string& text);

std::string constant_report_json(const ConstantReport& r, const ClassSpec& spec);
std::string decomposition_json(const CZDecomposition& dec);
std::string maximal_report_json(const GridFunction& field, const std::string& op, const std::string& family);
std::string suites_json(const std::vector<SuiteResult>& suites);
std::string rh_probe_json(const RhProbe& probe, const ClassSpec& spec);
/// cell,x[,y],value
std::string field_csv(const GridFunction& field);

}  // namespace weightlab
