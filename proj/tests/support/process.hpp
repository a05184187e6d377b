#pragma once

// Helpers for tests that exercise the command-line binary: a per-process
// scratch directory, file slurping/writing, and a popen-free command runner
// that captures exit code, stdout, and stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

namespace test_support {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

inline std::string require_env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr)
        throw std::runtime_error(std::string(name) +
                                 " is not set; run through ctest or export it");
    return v;
}

inline const std::filesystem::path& scratch_dir() {
    static const std::filesystem::path p = [] {
        std::string buf =
            (std::filesystem::temp_directory_path() / "relobs-test-XXXXXX").string();
        if (mkdtemp(buf.data()) == nullptr)
            throw std::runtime_error("cannot create a scratch directory");
        return std::filesystem::path(buf);
    }();
    return p;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path write_scratch_file(const std::string& name,
                                                const std::string& content) {
    std::filesystem::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

/// Run a full command line, redirecting its streams to scratch files.
inline RunResult run_command(const std::string& cmd_line) {
    static int serial = 0;
    std::filesystem::path out = scratch_dir() / ("stdout." + std::to_string(serial));
    std::filesystem::path err = scratch_dir() / ("stderr." + std::to_string(serial));
    ++serial;
    std::string cmd = cmd_line + " >" + out.string() + " 2>" + err.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace test_support
