#include "critline/cache.hpp"

#include "critline/epstein.hpp"
#include "critline/textio.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace critline {

namespace fs = std::filesystem;

namespace {

// Exclusive lock sentinel created with O_CREAT|O_EXCL; stale locks (older
// than one hour) are reclaimed once with a warning.
class LockFile {
  public:
    explicit LockFile(fs::path path) : path_(std::move(path)) {
        for (int attempt = 0; attempt < 2; ++attempt) {
            const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd >= 0) {
                const std::string pid = std::to_string(::getpid()) + "\n";
                [[maybe_unused]] ssize_t n = ::write(fd, pid.data(), pid.size());
                ::close(fd);
                held_ = true;
                return;
            }
            struct stat st{};
            if (::stat(path_.c_str(), &st) == 0) {
                const auto age = std::chrono::system_clock::now() -
                                 std::chrono::system_clock::from_time_t(st.st_mtime);
                if (attempt == 0 && age > std::chrono::hours(1)) {
                    std::cerr << "warning: reclaiming stale lock " << path_.string() << "\n";
                    ::unlink(path_.c_str());
                    continue;
                }
            }
            throw io_failure("cache lock conflict: " + path_.string() +
                             " exists (another builder is running?)");
        }
    }
    ~LockFile() {
        if (held_) ::unlink(path_.c_str());
    }
    LockFile(const LockFile&) = delete;
    LockFile& operator=(const LockFile&) = delete;

  private:
    fs::path path_;
    bool held_ = false;
};

} // namespace

std::filesystem::path value_list_path(const fs::path& dir, const std::string& digest) {
    return dir / ("epsvl_" + digest + ".txt");
}

void write_value_list_file(const fs::path& path, const ValueList& vl) {
    const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) throw io_failure("cannot write '" + tmp.string() + "'");
        out << "EPSVL1 " << vl.form_digest() << ' ' << fmt17(vl.cutoff()) << ' '
            << vl.entries().size() << '\n';
        for (const auto& e : vl.entries()) out << fmt17(e.lambda) << ' ' << e.count << '\n';
        if (!out) throw io_failure("write failure on '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_failure("cannot move cache file into place: " + ec.message());
    }
}

ValueList load_value_list_file(const fs::path& path, const std::string& expected_digest) {
    std::ifstream in(path);
    if (!in) throw io_failure("cannot open cache file '" + path.string() + "'");
    std::string tag, digest;
    double cutoff = 0.0;
    std::int64_t n_entries = 0;
    if (!(in >> tag >> digest >> cutoff >> n_entries) || tag != "EPSVL1")
        throw io_failure("corrupt cache header in '" + path.string() + "'");
    if (digest != expected_digest)
        throw io_failure("cache digest mismatch in '" + path.string() + "': header " + digest +
                         " vs form " + expected_digest);
    std::vector<ValueEntry> entries;
    entries.reserve(static_cast<size_t>(std::max<std::int64_t>(n_entries, 0)));
    for (std::int64_t i = 0; i < n_entries; ++i) {
        ValueEntry e{};
        if (!(in >> e.lambda >> e.count))
            throw io_failure("cache file '" + path.string() + "' truncated (digest " + digest + ")");
        entries.push_back(e);
    }
    double extra;
    if (in >> extra)
        throw io_failure("cache file '" + path.string() + "' has trailing data (digest " + digest + ")");
    try {
        return ValueList(digest, cutoff, std::move(entries));
    } catch (const invalid_input& e) {
        throw io_failure("cache file '" + path.string() + "' is inconsistent (digest " + digest +
                         "): " + e.what());
    }
}

namespace {

CacheFileReport build_one(const fs::path& dir, const GramForm& q, double x_target) {
    const std::string digest = q.digest();
    const fs::path path = value_list_path(dir, digest);
    CacheFileReport rep;
    rep.path = path.string();

    bool have_old = false;
    double old_cutoff = 0.0;
    if (fs::exists(path)) {
        const ValueList old = load_value_list_file(path, digest);
        have_old = true;
        old_cutoff = old.cutoff();
        if (old_cutoff >= x_target * (1.0 - 1e-12)) {
            rep.status = "up_to_date";
            rep.cutoff = old.cutoff();
            rep.entries = static_cast<std::int64_t>(old.entries().size());
            rep.points = old.total_points();
            return rep;
        }
    }

    LockFile lock(path.string() + ".lock");
    const ValueList vl = enumerate_values(q, x_target);
    write_value_list_file(path, vl);
    rep.status = have_old ? "extended" : "built";
    rep.cutoff = vl.cutoff();
    rep.entries = static_cast<std::int64_t>(vl.entries().size());
    rep.points = vl.total_points();
    (void)old_cutoff;
    return rep;
}

} // namespace

CacheReport cache_manage(const fs::path& dir, const GramForm& q, double x_target) {
    if (dir.empty()) throw invalid_input("cache_manage: no cache directory given");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw io_failure("cache directory '" + dir.string() + "' is not usable");
    const GramForm qc = q.classified();
    if (!qc.is_positive_definite())
        throw invalid_input("cache_manage: form must be positive-definite");
    const double d = discriminant(qc);
    CacheReport rep;
    rep.primal = build_one(dir, qc, x_target);
    rep.dual = build_one(dir, dual(qc), std::max(x_target, x_target / d));
    return rep;
}

ValueListCache::ValueListCache(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_))
            throw io_failure("cache directory '" + dir_.string() + "' is not usable");
    }
}

const ValueList& ValueListCache::get(const GramForm& q, double min_cutoff) {
    const std::string digest = q.digest();
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = lists_.find(digest);
    if (it != lists_.end() && it->second->cutoff() >= min_cutoff * (1.0 - 1e-12))
        return *it->second;

    if (!dir_.empty()) {
        const fs::path path = value_list_path(dir_, digest);
        if (fs::exists(path)) {
            ValueList from_disk = load_value_list_file(path, digest);
            if (from_disk.cutoff() >= min_cutoff * (1.0 - 1e-12)) {
                auto owned = std::make_unique<ValueList>(std::move(from_disk));
                const ValueList& ref = *owned;
                lists_[digest] = std::move(owned);
                return ref;
            }
        }
    }

    ValueList built = enumerate_values(q, min_cutoff);
    if (!dir_.empty()) {
        LockFile lock_file(value_list_path(dir_, digest).string() + ".lock");
        write_value_list_file(value_list_path(dir_, digest), built);
    }
    auto owned = std::make_unique<ValueList>(std::move(built));
    const ValueList& ref = *owned;
    lists_[digest] = std::move(owned);
    return ref;
}

} // namespace critline
