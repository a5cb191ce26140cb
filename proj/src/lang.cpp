#include "telcokit/lang.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cctype>
#include <map>
#include <unordered_map>

namespace telcokit::refine {

namespace {

struct LanguageSample {
    const char* code;
    const char* text;
};

// Short prose samples used to train the trigram profiles at startup.
const LanguageSample kSamples[] = {
    {"en",
     "The network connects many devices across large distances and allows them to "
     "exchange information quickly and reliably. Engineers design these systems so "
     "that messages arrive in the right order even when some links fail. Over the "
     "years the technology has improved and people now expect to be connected at all "
     "times, whether they are at home, at work, or travelling between cities. The "
     "quality of a connection depends on many factors, including the distance to the "
     "nearest antenna, the number of users sharing the same channel, and the weather. "
     "Researchers continue to study new methods for sending more data with less "
     "energy, and the standards that describe these methods are written by large "
     "international organizations. Every new generation of equipment must remain "
     "compatible with the old one, which makes the work slow and careful. When a "
     "phone moves from one cell to another, the system must hand over the call "
     "without dropping it, and this simple experience hides a great amount of "
     "complexity that most people never notice in their daily lives."},
    {"fr",
     "Le réseau relie de nombreux appareils à travers de grandes distances et leur "
     "permet d'échanger des informations rapidement et de manière fiable. Les "
     "ingénieurs conçoivent ces systèmes pour que les messages arrivent dans le bon "
     "ordre même lorsque certaines liaisons tombent en panne. Au fil des années, la "
     "technologie s'est améliorée et les gens s'attendent désormais à être connectés "
     "en permanence, qu'ils soient chez eux, au travail ou en voyage entre les "
     "villes. La qualité d'une connexion dépend de nombreux facteurs, notamment la "
     "distance jusqu'à l'antenne la plus proche, le nombre d'utilisateurs partageant "
     "le même canal et la météo. Les chercheurs continuent d'étudier de nouvelles "
     "méthodes pour envoyer plus de données avec moins d'énergie, et les normes qui "
     "décrivent ces méthodes sont rédigées par de grandes organisations "
     "internationales. Chaque nouvelle génération d'équipement doit rester "
     "compatible avec l'ancienne, ce qui rend le travail lent et minutieux."},
    {"de",
     "Das Netzwerk verbindet viele Geräte über große Entfernungen und ermöglicht "
     "ihnen, Informationen schnell und zuverlässig auszutauschen. Ingenieure "
     "entwerfen diese Systeme so, dass Nachrichten in der richtigen Reihenfolge "
     "ankommen, selbst wenn einige Verbindungen ausfallen. Im Laufe der Jahre hat "
     "sich die Technik verbessert, und die Menschen erwarten heute, jederzeit "
     "verbunden zu sein, ob zu Hause, bei der Arbeit oder auf Reisen zwischen den "
     "Städten. Die Qualität einer Verbindung hängt von vielen Faktoren ab, darunter "
     "die Entfernung zur nächsten Antenne, die Zahl der Nutzer, die denselben Kanal "
     "teilen, und das Wetter. Forscher untersuchen weiterhin neue Verfahren, um mehr "
     "Daten mit weniger Energie zu übertragen, und die Normen, die diese Verfahren "
     "beschreiben, werden von großen internationalen Organisationen verfasst. Jede "
     "neue Gerätegeneration muss mit der alten kompatibel bleiben, was die Arbeit "
     "langsam und sorgfältig macht."},
    {"es",
     "La red conecta muchos dispositivos a través de grandes distancias y les "
     "permite intercambiar información de forma rápida y fiable. Los ingenieros "
     "diseñan estos sistemas para que los mensajes lleguen en el orden correcto "
     "incluso cuando algunos enlaces fallan. Con los años la tecnología ha mejorado "
     "y la gente ahora espera estar conectada en todo momento, ya sea en casa, en el "
     "trabajo o viajando entre ciudades. La calidad de una conexión depende de "
     "muchos factores, incluida la distancia a la antena más cercana, el número de "
     "usuarios que comparten el mismo canal y el clima. Los investigadores siguen "
     "estudiando nuevos métodos para enviar más datos con menos energía, y las "
     "normas que describen estos métodos las redactan grandes organizaciones "
     "internacionales. Cada nueva generación de equipos debe seguir siendo "
     "compatible con la anterior, lo que hace que el trabajo sea lento y cuidadoso."},
    {"it",
     "La rete collega molti dispositivi attraverso grandi distanze e permette loro "
     "di scambiare informazioni in modo rapido e affidabile. Gli ingegneri "
     "progettano questi sistemi in modo che i messaggi arrivino nell'ordine giusto "
     "anche quando alcuni collegamenti si guastano. Nel corso degli anni la "
     "tecnologia è migliorata e le persone ora si aspettano di essere connesse in "
     "ogni momento, che siano a casa, al lavoro o in viaggio tra le città. La "
     "qualità di una connessione dipende da molti fattori, tra cui la distanza "
     "dall'antenna più vicina, il numero di utenti che condividono lo stesso canale "
     "e il tempo. I ricercatori continuano a studiare nuovi metodi per inviare più "
     "dati con meno energia, e le norme che descrivono questi metodi sono scritte da "
     "grandi organizzazioni internazionali. Ogni nuova generazione di apparecchi "
     "deve restare compatibile con la precedente, il che rende il lavoro lento e "
     "accurato."},
};

using Trigram = std::array<unsigned char, 3>;

struct TrigramKeyHash {
    size_t operator()(const Trigram& t) const {
        return (size_t(t[0]) << 16) | (size_t(t[1]) << 8) | t[2];
    }
};

using Profile = std::unordered_map<Trigram, double, TrigramKeyHash>;

std::vector<Trigram> extract_trigrams(std::string_view text) {
    // Lowercase ASCII, map whitespace/digits to a space marker, keep other
    // bytes (covers accented UTF-8 sequences) as-is.
    std::string norm;
    norm.reserve(text.size() + 2);
    norm.push_back(' ');
    for (unsigned char c : text) {
        if (std::isspace(c) || std::isdigit(c) || std::ispunct(c)) {
            if (norm.back() != ' ') norm.push_back(' ');
        } else if (c < 128) {
            norm.push_back(static_cast<char>(std::tolower(c)));
        } else {
            norm.push_back(static_cast<char>(c));
        }
    }
    if (norm.back() != ' ') norm.push_back(' ');
    std::vector<Trigram> out;
    if (norm.size() < 3) return out;
    for (size_t i = 0; i + 3 <= norm.size(); ++i) {
        out.push_back({static_cast<unsigned char>(norm[i]),
                       static_cast<unsigned char>(norm[i + 1]),
                       static_cast<unsigned char>(norm[i + 2])});
    }
    return out;
}

struct Model {
    std::vector<std::pair<std::string, Profile>> profiles;  // code -> log-prob profile
    double floor = 0.0;                                     // unseen-trigram log-prob
};

const Model& model() {
    static Model m = [] {
        Model out;
        for (const auto& sample : kSamples) {
            auto tris = extract_trigrams(sample.text);
            std::unordered_map<Trigram, size_t, TrigramKeyHash> counts;
            for (const auto& t : tris) ++counts[t];
            Profile profile;
            double denom = static_cast<double>(tris.size()) + 4096.0;  // add-1 over a nominal space
            for (const auto& [t, n] : counts)
                profile[t] = std::log((static_cast<double>(n) + 1.0) / denom);
            out.profiles.emplace_back(sample.code, std::move(profile));
            out.floor = std::min(out.floor, std::log(1.0 / denom));
        }
        return out;
    }();
    return m;
}

}  // namespace

LanguageGuess detect_language(std::string_view text) {
    if (text.size() < 20) return {"und", 0.0};
    auto tris = extract_trigrams(text);
    if (tris.empty()) return {"und", 0.0};
    const Model& m = model();
    std::vector<double> scores;
    scores.reserve(m.profiles.size());
    for (const auto& [code, profile] : m.profiles) {
        double s = 0.0;
        for (const auto& t : tris) {
            auto it = profile.find(t);
            s += it != profile.end() ? it->second : m.floor;
        }
        scores.push_back(s);
    }
    size_t best = static_cast<size_t>(
        std::max_element(scores.begin(), scores.end()) - scores.begin());
    // Softmax over total log-likelihoods; sharp for any clear-cut text.
    double mx = scores[best];
    double z = 0.0;
    for (double s : scores) z += std::exp(s - mx);
    double confidence = 1.0 / z;
    return {m.profiles[best].first, confidence};
}

std::vector<std::string> supported_languages() {
    std::vector<std::string> out;
    for (const auto& sample : kSamples) out.emplace_back(sample.code);
    return out;
}

}  // namespace telcokit::refine
