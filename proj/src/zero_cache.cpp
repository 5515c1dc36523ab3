#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "iqf/zeros.hpp"

namespace iqf {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256: EVP_Digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

std::string serialize_zero_list(const ZeroList& list) {
    std::ostringstream body;
    body << "# kind=" << (list.id.kind == LKind::riemann_zeta ? "riemann_zeta" : "dirichlet")
         << "\n";
    body << "# conductor=" << list.id.conductor << "\n";
    body << "# height=" << fmt12(list.height) << "\n";
    body << "# certified=" << (list.certified ? 1 : 0) << "\n";
    for (double g : list.ordinates) body << fmt12(g) << "\n";
    std::string s = body.str();
    return s + "# sha256=" + sha256_hex(s) + "\n";
}

ZeroList parse_zero_list(const std::string& text) {
    auto pos = text.rfind("# sha256=");
    if (pos == std::string::npos)
        throw std::runtime_error("zero cache: missing checksum line");
    std::string body = text.substr(0, pos);
    std::string tail = text.substr(pos);
    std::string want = tail.substr(9);
    while (!want.empty() && (want.back() == '\n' || want.back() == '\r')) want.pop_back();
    if (sha256_hex(body) != want)
        throw std::runtime_error("zero cache: checksum mismatch");

    ZeroList list;
    bool have_kind = false, have_cond = false, have_height = false;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# kind=", 0) == 0) {
            std::string k = line.substr(7);
            if (k == "riemann_zeta")
                list.id.kind = LKind::riemann_zeta;
            else if (k == "dirichlet")
                list.id.kind = LKind::dirichlet;
            else
                throw std::runtime_error("zero cache: unknown kind '" + k + "'");
            have_kind = true;
        } else if (line.rfind("# conductor=", 0) == 0) {
            list.id.conductor = std::stoll(line.substr(12));
            have_cond = true;
        } else if (line.rfind("# height=", 0) == 0) {
            list.height = std::stod(line.substr(9));
            have_height = true;
        } else if (line.rfind("# certified=", 0) == 0) {
            // recorded but ignored: imported lists start uncertified
        } else if (line[0] == '#') {
            throw std::runtime_error("zero cache: unknown header line '" + line + "'");
        } else {
            std::size_t used = 0;
            double g = std::stod(line, &used);
            if (used == 0) throw std::runtime_error("zero cache: bad ordinate '" + line + "'");
            list.ordinates.push_back(g);
        }
    }
    if (!have_kind || !have_cond || !have_height)
        throw std::runtime_error("zero cache: incomplete header");
    for (std::size_t i = 1; i < list.ordinates.size(); ++i)
        if (!(list.ordinates[i] > list.ordinates[i - 1]))
            throw std::runtime_error("zero cache: ordinates not increasing");
    list.certified = false;
    return list;
}

void export_zeros(const ZeroList& list, const std::filesystem::path& file) {
    std::string payload = serialize_zero_list(list);
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("export_zeros: cannot open " + tmp.string());
        out << payload;
        if (!out) throw std::runtime_error("export_zeros: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file); // readers never observe partial files
}

ZeroList import_zeros(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("import_zeros: cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_zero_list(ss.str());
}

std::filesystem::path zero_cache_path(const std::filesystem::path& dir, const LFunctionId& id) {
    return dir / (id.name() + ".zeros");
}

} // namespace iqf
