// isodg command-line driver.
//
// Subcommands:
//   study           run a convergence study from a config file, emit CSV
//   solve           run a single solve from a config file, print diagnostics
//   mesh-info       print structural information about a mesh
//   geometry-check  geometric-map diagnostics (boundary distance, measures)
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O error. ISODG_THREADS overrides the configured thread count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <isodg/assembly.hpp>
#include <isodg/config.hpp>
#include <isodg/gmsh_io.hpp>
#include <isodg/study.hpp>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

void apply_thread_override(isodg::StudyConfig& config) {
    if (const char* env = std::getenv("ISODG_THREADS")) {
        try {
            const int threads = std::stoi(env);
            if (threads >= 1) config.threads = threads;
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring non-numeric ISODG_THREADS\n";
        }
    }
}

int cmd_study(const std::string& config_path, const std::string& output_path, bool verbose) {
    isodg::StudyConfig config = isodg::parse_study_config_file(config_path);
    apply_thread_override(config);

    const isodg::StudyResult result = isodg::run_study(config);

    std::ofstream out(output_path);
    if (!out) throw isodg::IoError("cannot open output file: " + output_path);
    isodg::write_csv(result.rows, out);
    out.close();
    if (!out) throw isodg::IoError("failed writing output file: " + output_path);

    std::cout << "problem " << isodg::to_string(config.problem) << ", k=" << config.degree
              << ", " << isodg::to_string(config.geometry) << " map\n"
              << isodg::format_table(result.rows);
    if (verbose) {
        std::cout << "stability ratios:";
        for (double r : result.stability_ratios) std::cout << ' ' << r;
        std::cout << '\n';
    }
    std::cout << "csv written to " << output_path << '\n';
    return 0;
}

int cmd_solve(const std::string& config_path, int level_index, bool verbose) {
    isodg::StudyConfig config = isodg::parse_study_config_file(config_path);
    apply_thread_override(config);
    config.validate();

    const int n = config.num_levels();
    const int index = level_index < 0 ? n - 1 : level_index;
    if (index >= n) throw isodg::ConfigParseError("level index out of range");

    // Reduce the study to the single requested level (plus a throwaway
    // coarser one where needed to satisfy the two-level invariant).
    isodg::StudyConfig single = config;
    if (single.mesh_files.empty()) {
        single.levels = {std::max(0, config.levels[index] - 1), config.levels[index]};
    }

    const isodg::StudyResult result = isodg::run_study(single);
    const isodg::StudyRow& row = result.rows.back();
    std::cout << "problem " << isodg::to_string(config.problem) << ", k=" << config.degree
              << ", " << isodg::to_string(config.geometry) << " map\n"
              << "level " << row.level << ": nelem=" << row.nelem << " ndof=" << row.ndof
              << '\n';
    std::cout.setf(std::ios::scientific);
    std::cout.precision(5);
    std::cout << "l2_error=" << row.l2_error << " dg_error=" << row.dg_error << '\n';
    if (verbose) {
        std::cout << "stability ratio " << result.stability_ratios.back() << '\n';
    }
    return 0;
}

int cmd_mesh_info(const std::string& mesh_path) {
    int ignored = 0;
    const isodg::Mesh mesh = isodg::load_gmsh(mesh_path, &ignored);
    std::cout << "dim " << mesh.dim << '\n'
              << "vertices " << mesh.num_vertices() << '\n'
              << "elements " << mesh.num_elements() << '\n'
              << "faces " << mesh.num_faces() << '\n'
              << "boundary_faces " << mesh.boundary_faces.size() << '\n'
              << "diameter_ratio " << isodg::diameter_ratio(mesh) << '\n';
    if (ignored > 0) std::cout << "ignored_elements " << ignored << '\n';
    return 0;
}

int cmd_geometry_check(const std::string& config_path) {
    const isodg::StudyConfig config = isodg::parse_study_config_file(config_path);
    const isodg::GeometryCheckResult result = isodg::run_geometry_check(config);

    std::cout << "problem " << isodg::to_string(config.problem) << ", map degree "
              << (config.geometry == isodg::GeometryKind::Straight ? 1 : config.degree)
              << '\n';
    std::cout.setf(std::ios::scientific);
    std::cout.precision(5);
    std::cout << "exact measure " << result.exact_measure << '\n';
    for (const isodg::GeometryCheckRow& row : result.rows) {
        std::cout << "level " << row.level << ": nelem=" << row.nelem
                  << " boundary_distance=" << row.boundary_distance
                  << " measure_error=" << row.measure_error << '\n';
    }
    std::cout << "boundary_distance order " << result.boundary_order << '\n'
              << "measure_error order " << result.measure_order << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curved-geometry upwind DG transport solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path = "study.csv";
    std::string mesh_path;
    int level_index = -1;
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Print extra diagnostics");

    CLI::App* study = app.add_subcommand("study", "Run a convergence study");
    study->add_option("-c,--config", config_path, "Study config file")->required();
    study->add_option("-o,--output", output_path, "CSV output path");

    CLI::App* solve = app.add_subcommand("solve", "Run a single solve");
    solve->add_option("-c,--config", config_path, "Study config file")->required();
    solve->add_option("-l,--level", level_index, "Level index (default: finest)");

    CLI::App* info = app.add_subcommand("mesh-info", "Inspect a mesh file");
    info->add_option("mesh", mesh_path, "Gmsh MSH file")->required();

    CLI::App* geom = app.add_subcommand("geometry-check", "Geometric-map diagnostics");
    geom->add_option("-c,--config", config_path, "Study config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (study->parsed()) return cmd_study(config_path, output_path, verbose);
        if (solve->parsed()) return cmd_solve(config_path, level_index, verbose);
        if (info->parsed()) return cmd_mesh_info(mesh_path);
        return cmd_geometry_check(config_path);
    } catch (const isodg::ConfigParseError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return kExitConfig;
    } catch (const isodg::IoError& err) {
        std::cerr << "i/o error: " << err.what() << '\n';
        return kExitIo;
    } catch (const isodg::UnsupportedFormat& err) {
        std::cerr << "i/o error: " << err.what() << '\n';
        return kExitIo;
    } catch (const isodg::Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitNumerical;
    }
}
