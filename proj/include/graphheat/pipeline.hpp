#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace graphheat {

enum class Method { naive, cutoff, both };
enum class ForwardSolver { euler, spectral };

/// Full benchmark configuration. Everything is explicit (no environment
/// lookups) so a config plus a seed reproduces a run byte-for-byte apart
/// from timings.
struct PipelineConfig {
    std::vector<std::string> inputs; // PGM paths
    int grid_rows = 128;
    int grid_cols = 128;
    double sigma_noise = 20.0;
    double epsilon = 0.1;
    double gamma = 0.5;
    double t_final = 0.5;
    double courant = 0.03;
    std::uint64_t seed = 0;
    Method method = Method::both;
    ForwardSolver forward = ForwardSolver::euler;
    std::string output_dir = ".";
    int timing_reps = 8; // backward solves per timing measurement
};

/// Per-image benchmark outcome. PSNRs are NaN for methods that were not
/// run; times are per-reconstruction seconds for the backward step only
/// (basis setup is shared across images and reported separately).
struct BenchRecord {
    std::string image;
    double psnr_naive;
    double psnr_cutoff;
    double time_naive;
    double time_cutoff;
    int modes_retained;
    double m_eps;
};

struct PipelineResult {
    std::vector<BenchRecord> records;
    std::vector<std::pair<std::string, std::string>> failures; // (path, reason)
    double basis_setup_seconds = 0.0;
};

/// Per image: load -> resize to grid -> signal -> AWGN (per-image seed =
/// seed XOR image index) -> forward to T -> backward to t=0 -> PSNR against
/// the resized clean original. Writes <name>_noisy.pgm, <name>_blurred.pgm,
/// <name>_naive.pgm / <name>_cutoff.pgm, plus results.csv and results.txt
/// into output_dir. Per-image failures are recorded and skipped.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// CSV: header + one row per record + an "Avg" row. Columns exactly:
/// image,psnr_naive,psnr_cutoff,time_naive,time_cutoff,modes_retained,m_eps
void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);

/// Aligned text table with the same rows.
void write_table(const std::vector<BenchRecord>& records, std::ostream& out);

/// Column means over records (image name "Avg."). Throws ConfigError on
/// empty input.
BenchRecord average_record(const std::vector<BenchRecord>& records);

} // namespace graphheat
