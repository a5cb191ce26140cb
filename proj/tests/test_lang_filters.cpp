#include <doctest.h>

#include <string>
#include <vector>

#include "telcokit/filters.hpp"
#include "telcokit/lang.hpp"

using namespace telcokit;
using namespace telcokit::refine;

namespace {

DocumentRecord doc_with(const std::string& text) {
    DocumentRecord d;
    d.id = "t";
    d.text = text;
    return d;
}

std::string english_words(size_t n) {
    static const char* words[] = {"the", "network", "uses", "scheduling", "to", "balance",
                                  "load", "between", "cells", "during", "busy", "hours"};
    std::string out;
    for (size_t i = 0; i < n; ++i) {
        if (i > 0) out += ' ';
        out += words[i % 12];
    }
    return out;
}

}  // namespace

TEST_CASE("language detection on a labelled snippet fixture") {
    struct Case {
        const char* lang;
        const char* text;
    };
    const Case fixture[] = {
        {"en", "The quick brown fox jumps over the lazy dog near the river bank."},
        {"en", "This specification defines the procedures used by the network to schedule traffic."},
        {"en", "Please review the attached document and send your comments before the meeting."},
        {"en", "Wireless communication systems rely on carefully planned frequency reuse."},
        {"en", "The weather was pleasant and the children played outside all afternoon."},
        {"en", "Researchers have shown that the new approach improves throughput significantly."},
        {"en", "A balanced diet and regular exercise are important for good health."},
        {"en", "The committee agreed to postpone the decision until the next quarterly review."},
        {"en", "Customers can upgrade their subscription at any time through the online portal."},
        {"en", "Each base station reports its measurements to the central controller every second."},
        {"fr", "Le renard brun rapide saute par-dessus le chien paresseux près de la rivière."},
        {"fr", "Cette spécification définit les procédures utilisées par le réseau pour planifier le trafic."},
        {"fr", "Veuillez examiner le document ci-joint et envoyer vos commentaires avant la réunion."},
        {"fr", "Les systèmes de communication sans fil reposent sur une réutilisation des fréquences."},
        {"fr", "Le temps était agréable et les enfants ont joué dehors tout l'après-midi."},
        {"fr", "Les chercheurs ont montré que la nouvelle approche améliore le débit de manière significative."},
        {"fr", "Une alimentation équilibrée et de l'exercice régulier sont importants pour la santé."},
        {"fr", "Le comité a convenu de reporter la décision jusqu'à la prochaine revue trimestrielle."},
        {"fr", "Les clients peuvent mettre à niveau leur abonnement à tout moment via le portail."},
        {"fr", "Chaque station de base transmet ses mesures au contrôleur central chaque seconde."},
        {"de", "Der schnelle braune Fuchs springt über den faulen Hund in der Nähe des Flusses."},
        {"de", "Diese Spezifikation beschreibt die Verfahren, die das Netz zur Planung des Verkehrs verwendet."},
        {"de", "Bitte prüfen Sie das beigefügte Dokument und senden Sie Ihre Kommentare vor der Sitzung."},
        {"de", "Drahtlose Kommunikationssysteme beruhen auf sorgfältig geplanter Frequenzwiederverwendung."},
        {"de", "Das Wetter war angenehm und die Kinder spielten den ganzen Nachmittag draußen."},
        {"de", "Forscher haben gezeigt, dass der neue Ansatz den Durchsatz deutlich verbessert."},
        {"de", "Eine ausgewogene Ernährung und regelmäßige Bewegung sind wichtig für die Gesundheit."},
        {"de", "Der Ausschuss beschloss, die Entscheidung bis zur nächsten Quartalsprüfung zu verschieben."},
        {"de", "Kunden können ihr Abonnement jederzeit über das Online-Portal erweitern."},
        {"de", "Jede Basisstation meldet ihre Messungen jede Sekunde an die zentrale Steuerung."},
        {"es", "El rápido zorro marrón salta sobre el perro perezoso cerca de la orilla del río."},
        {"es", "Esta especificación define los procedimientos que utiliza la red para planificar el tráfico."},
        {"es", "Por favor revise el documento adjunto y envíe sus comentarios antes de la reunión."},
        {"es", "Los sistemas de comunicación inalámbrica dependen de una reutilización de frecuencias."},
        {"es", "El clima era agradable y los niños jugaron afuera toda la tarde."},
        {"es", "Los investigadores han demostrado que el nuevo enfoque mejora el rendimiento."},
        {"es", "Una dieta equilibrada y el ejercicio regular son importantes para la salud."},
        {"es", "El comité acordó posponer la decisión hasta la próxima revisión trimestral."},
        {"es", "Los clientes pueden mejorar su suscripción en cualquier momento a través del portal."},
        {"es", "Cada estación base informa sus mediciones al controlador central cada segundo."},
        {"it", "La veloce volpe marrone salta sopra il cane pigro vicino alla riva del fiume."},
        {"it", "Questa specifica definisce le procedure utilizzate dalla rete per pianificare il traffico."},
        {"it", "Si prega di esaminare il documento allegato e inviare i commenti prima della riunione."},
        {"it", "I sistemi di comunicazione senza fili si basano sul riutilizzo pianificato delle frequenze."},
        {"it", "Il tempo era piacevole e i bambini hanno giocato fuori tutto il pomeriggio."},
        {"it", "I ricercatori hanno dimostrato che il nuovo approccio migliora notevolmente la resa."},
        {"it", "Una dieta equilibrata e un esercizio regolare sono importanti per la salute."},
        {"it", "Il comitato ha deciso di rinviare la decisione alla prossima revisione trimestrale."},
        {"it", "I clienti possono aggiornare il proprio abbonamento in qualsiasi momento dal portale."},
        {"it", "Ogni stazione base riporta le proprie misurazioni al controllore centrale ogni secondo."},
    };
    int correct = 0;
    for (const auto& c : fixture) {
        auto guess = detect_language(c.text);
        if (guess.language == c.lang) ++correct;
    }
    // trigram profiles are small; demand high but not perfect agreement
    CHECK(correct >= 47);
}

TEST_CASE("short inputs are undetermined") {
    auto guess = detect_language("hi there");
    CHECK(guess.language == "und");
    CHECK(guess.confidence == doctest::Approx(0.0));
}

TEST_CASE("confidence is a probability") {
    auto guess = detect_language(english_words(80));
    CHECK(guess.language == "en");
    CHECK(guess.confidence > 0.5);
    CHECK(guess.confidence <= 1.0);
}

TEST_CASE("filter config validation") {
    FilterConfig fc;
    CHECK_NOTHROW(fc.validate());
    fc.min_words = 100;
    fc.max_words = 50;
    CHECK_THROWS(fc.validate());
    fc = FilterConfig{};
    fc.min_alpha_ratio = 1.5;
    CHECK_THROWS(fc.validate());
}

TEST_CASE("document filters run in fixed order with sharp length bounds") {
    FilterConfig fc;
    fc.min_words = 64;
    fc.max_words = 100;

    auto v63 = apply_document_filters(doc_with(english_words(63)), fc);
    CHECK(!v63.kept);
    CHECK(v63.reason == RejectReason::kTooShort);
    CHECK(apply_document_filters(doc_with(english_words(64)), fc).kept);
    CHECK(apply_document_filters(doc_with(english_words(100)), fc).kept);
    auto v101 = apply_document_filters(doc_with(english_words(101)), fc);
    CHECK(!v101.kept);
    CHECK(v101.reason == RejectReason::kTooLong);

    // language check precedes everything: a French doc that is also too long
    // reports wrong_language
    std::string fr;
    for (int i = 0; i < 120; ++i)
        fr += "le réseau planifie les transmissions entre les stations de base chaque seconde ";
    auto vfr = apply_document_filters(doc_with(fr), fc);
    CHECK(!vfr.kept);
    CHECK(vfr.reason == RejectReason::kWrongLanguage);

    // symbol soup fails alpha ratio once language passes
    FilterConfig loose = fc;
    loose.allowed_languages.clear();  // empty = allow all
    std::string symbols = english_words(32) + " ";
    for (int i = 0; i < 40; ++i) symbols += "#### ";
    auto vsym = apply_document_filters(doc_with(symbols), loose);
    CHECK(!vsym.kept);
    CHECK(vsym.reason == RejectReason::kLowAlphaRatio);
}

TEST_CASE("line filters drop boilerplate and keep prose") {
    FilterConfig fc;
    const char* boilerplate[] = {
        "HOME | ABOUT |", "MENU", "FAQ", "TOP", "BACK", "NEXT PAGE", "CLICK HERE",
        "PDF", "TOC", "COPYRIGHT ETSI", "ALL RIGHTS RESERVED", "PAGE 1", "LOGIN",
        "SIGN UP", "READ MORE", "PRINT THIS", "SHARE", "CONTACT US", "SITE MAP",
        "TERMS OF USE", "============================", "----|----|----|----",
        "*** *** *** ***", "### $$$ %%% @@@", ">>>>>>>>>>>>>>>", "..............",
        "| | | | | | | |", "+--+--+--+--+", "== == == == ==", "#####",
    };
    for (const char* line : boilerplate) {
        DocumentRecord d = doc_with(std::string("Real prose sentence about scheduling decisions here.\n") +
                                    line + "\nAnother real prose sentence closes the document body.");
        auto result = apply_line_filters(d, fc);
        INFO("line: " << line);
        CHECK(result.removed_lines == 1);
        CHECK(result.doc.text.find(line) == std::string::npos);
    }

    const char* prose[] = {
        "The network schedules uplink transmissions every millisecond.",
        "Operators deploy small cells to improve indoor coverage.",
        "A buffer status report tells the scheduler how much data waits.",
        "Carrier aggregation increases the available bandwidth.",
        "The handover procedure copies context between cells.",
        "Paging wakes idle devices using broadcast identifiers.",
        "Beamforming focuses energy toward the receiver.",
        "Edge servers reduce round trip latency for games.",
        "Timing advance aligns uplink symbols at the receiver.",
        "Power control protects distant users from interference.",
        "Subscribers authenticate with credentials from the core.",
        "Slicing isolates services on shared infrastructure.",
        "Quality of service flows map traffic onto bearers.",
        "Synchronization signals convey the cell identity.",
        "Roaming records flow back to the home operator.",
        "Random access requests initial uplink resources.",
        "Spectrum sharing requires listen before talk rules.",
        "Dual connectivity splits control and user planes.",
        "Retransmissions combine soft information across attempts.",
        "Interference coordination uses load indicators.",
        "The scheduler allocates resource blocks per interval.",
        "Voice rides over dedicated guaranteed bearers.",
        "Counters feed the capacity planning process.",
        "Millimeter wave channels are wide but fragile.",
        "The session function establishes data sessions.",
        "Unified data management stores subscriber keys.",
        "Tracking areas group cells for paging purposes.",
        "Control plane signalling is kept separate from data.",
        "Channel feedback steers link adaptation choices.",
        "Latency budgets constrain the placement of servers.",
    };
    for (const char* line : prose) {
        DocumentRecord d = doc_with(std::string("Header sentence for the fixture document.\n") + line);
        auto result = apply_line_filters(d, fc);
        INFO("line: " << line);
        CHECK(result.removed_lines == 0);
        CHECK(result.doc.text.find(line) != std::string::npos);
    }
}

TEST_CASE("repeated consecutive lines collapse to one") {
    FilterConfig fc;
    DocumentRecord d = doc_with("The same prose line repeats below.\n"
                                "The same prose line repeats below.\n"
                                "But a different line survives.");
    auto result = apply_line_filters(d, fc);
    CHECK(result.removed_lines == 1);
}
