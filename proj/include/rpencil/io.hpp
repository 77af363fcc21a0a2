#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rpencil/lie_core.hpp"
#include "rpencil/pencil.hpp"
#include "rpencil/rmatrix.hpp"
#include "rpencil/vaisman.hpp"

namespace rpencil {

inline constexpr int kSchemaVersion = 1;

/// 17 significant digits with a '.' decimal point, independent of the locale.
std::string format_double(double v);

/// Complex matrix as rows of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

nlohmann::json basis_to_json(const LieBasis& basis);
nlohmann::json tensor_to_json(const RealTensor2& t, const LieBasis& basis);
nlohmann::json report_to_json(const PencilReport& report);
nlohmann::json certification_to_json(const Certification& cert);
nlohmann::json obstruction_to_json(const ObstructionResult& result);
nlohmann::json verdict_to_json(const Verdict& verdict);

/// Columns lambda,min_rank,degenerate,max_bound,samples,seed.
std::string report_csv(const PencilReport& report);

/// Columns xi,lhs_quadrature,lhs_closed_form,abs_err.
std::string obstruction_csv(const ObstructionResult& result);

/// Throws IoError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace rpencil
