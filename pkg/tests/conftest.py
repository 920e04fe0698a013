"""Shared fixtures: CSV builders plus the hand-built reference snapshots."""
from __future__ import annotations

import csv
import io

import pytest

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE_RESULTS.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    if _ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, outcome in _ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"{outcome}: {name}")

from boardgraph.ingest import build_snapshot
from boardgraph.synth import BCE_HEADER, DIF_HEADER

REF_YEAR = 2023


def dif_csv(rows: list[dict]) -> bytes:
    """Build a factors CSV from dicts keyed by canonical header names."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DIF_HEADER)
    for row in rows:
        unknown = set(row) - set(DIF_HEADER)
        assert not unknown, f"bad fixture columns: {unknown}"
        writer.writerow([row.get(col, "") for col in DIF_HEADER])
    return buf.getvalue().encode()


def bce_csv(rows: list[tuple]) -> bytes:
    """Build an edges CSV from (cid, cname, n1, n1name, n2, n2name, overlap)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BCE_HEADER)
    writer.writerows(rows)
    return buf.getvalue().encode()


def seat(director_id, director_name, company_id, company_name, **kw) -> dict:
    row = {
        "DIRECTOR_ID": director_id,
        "DIRECTOR_NAME": director_name,
        "ISSUER_ID": company_id,
        "ISSUER_NAME": company_name,
    }
    row.update(kw)
    return row


# --- Director-detail fixture: the high-influence chairman of Fig-shape ----

BUFFETT = 100
BLACK, ALLEN_R, ALLEN_H = 101, 102, 103
BERKSHIRE, KRAFT, SOLOMON, WAPO, COCACOLA = 5001, 5002, 5003, 5004, 5005


@pytest.fixture(scope="session")
def buffett_snapshot():
    dif = dif_csv(
        [
            seat(
                BUFFETT,
                "Warren Buffett",
                BERKSHIRE,
                "BERKSHIRE HATHAWAY INC.",
                GENDER="Male",
                AGE=91,
                TENURE=58,
                DIRECTOR_SINCE=1965,
                CEO_SINCE=1970,
                CHAIRMAN_SINCE=1970,
                FAMILY="Yes",
                FOUNDER="No",
                OWNERSHIP_CATEGORY="Controlled",
                MKTCAP_LEAGUE=4,
                IND_SEC="Financials",
                HQ_COUNTRY="US",
                INF_TODAY=64.13,
                INF_2018=64.39,
                INF_2019=64.39,
                INF_2020=64.39,
                INF_2021=64.39,
                INF_2022=64.13,
            ),
            seat(BUFFETT, "Warren Buffett", KRAFT, "THE KRAFT HEINZ COMPANY", GENDER="Male", AGE=91,
                 MKTCAP_LEAGUE=3, IND_SEC="Consumer Staples", HQ_COUNTRY="US"),
            seat(BUFFETT, "Warren Buffett", SOLOMON, "SALOMON INC.", GENDER="Male", AGE=91,
                 MKTCAP_LEAGUE=3, IND_SEC="Financials", HQ_COUNTRY="US"),
            seat(BUFFETT, "Warren Buffett", WAPO, "THE WASHINGTON POST COMPANY", GENDER="Male", AGE=91,
                 MKTCAP_LEAGUE=2, IND_SEC="Media", HQ_COUNTRY="US"),
            seat(ALLEN_H, "Herbert Allen", COCACOLA, "THE COCA-COLA COMPANY", GENDER="Male", AGE=83,
                 TENURE=39, MKTCAP_LEAGUE=4, IND_SEC="Consumer Staples", HQ_COUNTRY="US"),
        ]
    )
    bce = bce_csv(
        [
            # node order deliberately inconsistent
            (COCACOLA, "THE COCA-COLA COMPANY", BUFFETT, "Warren Buffett", BLACK, "Cathleen Black", 12.6),
            (COCACOLA, "THE COCA-COLA COMPANY", ALLEN_R, "Ronald Allen", BUFFETT, "Warren Buffett", 15.3),
            (COCACOLA, "THE COCA-COLA COMPANY", BUFFETT, "Warren Buffett", ALLEN_H, "Herbert Allen", 17.3),
        ]
    )
    return build_snapshot(dif, bce, REF_YEAR)


# --- Company-directors fixture: the 12-seat German materials board --------

HEIDELBERG = 7001
H_OTHER_A, H_OTHER_B = 7002, 7003

HEIDELBERG_BOARD = [
    # (id, name, gender, age, tenure, inf_today, extra companies, chairperson)
    (200, "Barbara Breuning", "Female", 54, 4, 2.33, 0, False),
    (201, "Bernd Scheifele", "Male", 64, 0, 6.13, 1, True),
    (202, "Birgit Jochens", "Female", 62, 3, 2.70, 0, False),
    (203, "Heinz Schmitt", "Male", 56, 18, 5.77, 0, False),
    (204, "Ines Ploss", "Female", 47, 3, 2.95, 0, False),
    (205, "Ludwig Merckle", "Male", 57, 23, 59.68, 0, False),
    (206, "Luka Mucic", "Male", 50, 3, 3.49, 0, False),
    (207, "Margret Suckale", "Female", 65, 5, 6.56, 2, False),
    (208, "Marion Weissenberger-Eibl", "Female", 55, 10, 3.67, 2, False),
    (209, "Peter Riedel", "Male", 54, 3, 2.59, 0, False),
    (210, "Sopna Sury", "Female", 48, 0, 0.17, 0, False),
    (211, "Werner Schraeder", "Male", 58, 13, 3.96, 0, False),
]


@pytest.fixture(scope="session")
def heidelberg_snapshot():
    rows = []
    extra_companies = [
        (H_OTHER_A, "RHEINWERK INDUSTRIAL PLC"),
        (H_OTHER_B, "NORDSEE LOGISTICS GROUP"),
    ]
    for did, name, gender, age, tenure, inf, extra, chair in HEIDELBERG_BOARD:
        rows.append(
            seat(
                did,
                name,
                HEIDELBERG,
                "HeidelbergCement AG",
                GENDER=gender,
                AGE=age,
                TENURE=tenure,
                DIRECTOR_SINCE=REF_YEAR - tenure,
                CHAIRMAN_SINCE=(REF_YEAR - tenure) if chair else "",
                MKTCAP_LEAGUE=3,
                IND_SEC="Materials",
                HQ_COUNTRY="DE",
                OWNERSHIP_CATEGORY="Widely Held",
                INF_TODAY=inf,
            )
        )
        # extra seats (no influence score) only make companies_count real
        for cid, cname in extra_companies[:extra]:
            rows.append(
                seat(did, name, cid, cname, GENDER=gender, AGE=age, TENURE=2,
                     MKTCAP_LEAGUE=2, IND_SEC="Industrials", HQ_COUNTRY="US")
            )
    return build_snapshot(dif_csv(rows), bce_csv([]), REF_YEAR)


# --- Peer-tenure fixture: one long-tenured board vs its league peers ------

LONGBOARD, PEER_A, PEER_B, FAMILY_PEER, OTHER_LEAGUE = 8001, 8002, 8003, 8004, 8005


@pytest.fixture(scope="session")
def peer_ratio_snapshot():
    def board(cid, cname, tenures, start_id, family=False, league=3):
        return [
            seat(
                start_id + i,
                f"Director {start_id + i}",
                cid,
                cname,
                GENDER="Male",
                TENURE=t,
                FAMILY="Yes" if family and i == 0 else "No",
                MKTCAP_LEAGUE=league,
                IND_SEC="Industrials",
                HQ_COUNTRY="US",
            )
            for i, t in enumerate(tenures)
        ]

    rows = (
        board(LONGBOARD, "EVERGREEN AIRWAYS CO.", [14, 16, 12], 400)
        + board(PEER_A, "MERIDIAN TRANSPORT INC.", [7, 8], 410)
        + board(PEER_B, "CASCADE FREIGHT CORP.", [6, 7], 420)
        + board(FAMILY_PEER, "DYNASTY AIR GROUP", [30, 31], 430, family=True)
        + board(OTHER_LEAGUE, "PUDDLEJUMPER AVIATION", [1, 2], 440, league=1)
    )
    return build_snapshot(dif_csv(rows), bce_csv([]), REF_YEAR)


# --- Quota-country fixture: parity in seats, not in influence -------------


@pytest.fixture(scope="session")
def norway_snapshot():
    rows = []
    specs = [
        ("Female", 5.0),
        ("Female", 5.0),
        ("Male", 45.0),
        ("Male", 45.0),
    ]
    for i, (gender, inf) in enumerate(specs):
        rows.append(
            seat(500 + i, f"Director {500 + i}", 8101, "FJELL MARITIME ASA",
                 GENDER=gender, TENURE=5, INF_TODAY=inf, MKTCAP_LEAGUE=2,
                 IND_SEC="Energy", HQ_COUNTRY="NO")
        )
    # a comparison country with influence tracking seats evenly
    for i, (gender, inf) in enumerate([("Female", 25.0), ("Male", 25.0)]):
        rows.append(
            seat(520 + i, f"Director {520 + i}", 8102, "PLAINS HOLDING CORP.",
                 GENDER=gender, TENURE=5, INF_TODAY=inf, MKTCAP_LEAGUE=2,
                 IND_SEC="Energy", HQ_COUNTRY="US")
        )
    return build_snapshot(dif_csv(rows), bce_csv([]), REF_YEAR)


# --- Interlock fixture: three boards sharing the same trio -----------------

CAT, BOEING, MARRIOTT = 9001, 9002, 9003


@pytest.fixture(scope="session")
def interlock_snapshot():
    rows = []
    shared = [(301, "Alma Shared"), (302, "Boris Shared"), (303, "Clea Shared")]
    boards = [
        (CAT, "CATERWAUL HEAVY INC."),
        (BOEING, "BIPLANE AEROSPACE CORP."),
        (MARRIOTT, "MANOR HOTELS GROUP"),
    ]
    for cid, cname in boards:
        for did, name in shared:
            rows.append(seat(did, name, cid, cname, GENDER="Male", TENURE=6,
                             MKTCAP_LEAGUE=4, IND_SEC="Industrials", HQ_COUNTRY="US"))
    # filler directors, one shared pairwise link below the threshold
    rows.append(seat(310, "Solo Filler", CAT, "CATERWAUL HEAVY INC.", GENDER="Female",
                     TENURE=2, MKTCAP_LEAGUE=4, IND_SEC="Industrials", HQ_COUNTRY="US"))
    rows.append(seat(311, "Pair Filler", CAT, "CATERWAUL HEAVY INC.", GENDER="Male",
                     TENURE=2, MKTCAP_LEAGUE=4, IND_SEC="Industrials", HQ_COUNTRY="US"))
    rows.append(seat(311, "Pair Filler", BOEING, "BIPLANE AEROSPACE CORP.", GENDER="Male",
                     TENURE=2, MKTCAP_LEAGUE=4, IND_SEC="Industrials", HQ_COUNTRY="US"))
    return build_snapshot(dif_csv(rows), bce_csv([]), REF_YEAR)
