from recipeforge.textnorm import collapse_formula_spaces, repair_text


def test_degree_sign_mojibake_repaired():
    assert repair_text("heated to 100 Â°C") == "heated to 100 °C"


def test_gte_mojibake_repaired_cp1252_flavour():
    # ">=" encoded as UTF-8 then misread as cp1252: "â‰¥"
    corrupted = "≥".encode("utf-8").decode("cp1252")
    assert repair_text(f"yields {corrupted} 90%") == "yields ≥ 90%"


def test_gte_mojibake_repaired_latin1_flavour():
    corrupted = "≥".encode("utf-8").decode("latin-1")
    assert repair_text(f"yields {corrupted} 90%") == "yields ≥ 90%"


def test_micro_sign_folds_to_mu():
    assert repair_text("5 µL") == "5 μL"


def test_ligatures_expand():
    assert repair_text("eﬀect of ﬁlms") == "effect of films"


def test_clean_text_unchanged():
    text = "AgNO3 dissolved at 60 °C"
    assert repair_text(text) == text


def test_formula_space_collapse():
    assert collapse_formula_spaces("films of Ti O 2 on glass") == "films of TiO2 on glass"
    assert collapse_formula_spaces("AgNO 3 solution") == "AgNO3 solution"


def test_formula_collapse_leaves_prose_alone():
    assert collapse_formula_spaces("At 100 K the rate doubles") == "At 100 K the rate doubles"
    assert collapse_formula_spaces("0.5 M NaOH") == "0.5 M NaOH"


def test_whitespace_squeezed():
    assert repair_text("two   spaces\tkept apart") == "two spaces kept apart"
