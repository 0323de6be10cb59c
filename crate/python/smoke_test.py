"""Smoke test for the flagdesign_py extension.

Build first with `pip install --no-build-isolation -e crates/flagdesign-py`.
"""

import json

import flagdesign_py as fd


def main():
    assert fd.group_order("PSL(2,11)") == 660
    assert fd.group_order("M10") == 720
    assert (5, 10, 6, 3) in fd.admissible_params(5)
    assert fd.subdegrees("PSL(2,8)", "D-") == "1, 7^3, 14"

    baer = fd.construct("example2", 25)
    params, ft = fd.verify(baer, "PSigmaL(2,25)")
    assert params == (26, 65, 15, 6, 3)
    assert ft is True
    assert fd.verify(baer, "PGL(2,25)")[1] is False

    verdict = json.loads(fd.search("PSL(2,11)", 11, 55, 15, 3))
    assert "DesignFound" in verdict["outcome"]

    assert [t[1:] for t in fd.case_filter(9, 4, 1000)] == [(5, 10, 6, 3), (26, 65, 15, 6)]

    designs = dict(fd.classify(11))
    assert set(designs) == {"2-(5,3,3)", "2-(8,4,3)", "2-(11,3,3)", "2-(11,6,3)"}

    try:
        fd.group_order("PSL(2,6)")
    except ValueError:
        pass
    else:
        raise AssertionError("PSL(2,6) accepted")
    print("smoke test ok")


if __name__ == "__main__":
    main()
