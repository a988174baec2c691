#pragma once

#include <filesystem>
#include <string>
#include <unistd.h>

namespace testsupport {

// Paths are injected by the build so the binaries run from any directory.
inline std::string fixture_map(const std::string& name) {
    return std::string(DECOY_FIXTURE_DIR) + "/maps/" + name + ".json";
}

inline std::string product_map() {
    return std::string(DECOY_MAP_DIR) + "/de_mini.json";
}

// Self-deleting scratch directory. Each instance gets a fresh path, so tests
// in one binary never see each other's files.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        m_path = std::filesystem::temp_directory_path() /
                 ("decoy_" + tag + "_" + std::to_string(++counter) + "_" +
                  std::to_string(static_cast<unsigned long>(getpid())));
        std::filesystem::create_directories(m_path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(m_path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (m_path / name).string(); }
    std::string dir() const { return m_path.string(); }

  private:
    std::filesystem::path m_path;
};

} // namespace testsupport
