"""Writes demo.pcfg: a small English grammar in Chomsky normal form.

Rules below may be unary; unary chains are folded into the binary and
lexical rules of their ancestors so every left-hand side still sums to 1.
Run from this directory: python3 make_demo_grammar.py
"""

from collections import defaultdict

START = "TOP"

# (lhs, rhs, weight); weights are normalised per lhs together with the
# lexical mass of that lhs.
PHRASES = """
TOP   S DOT        1
S     NP VP        10
S     S CONJP      1
S     SBARC S      1
S     NP S         1
S     S SBAR       1
S     S PP         0.5
S     S NP         0.2
S     S ADVP       0.2
CONJP COMMA CS     1
CONJP CC S         1
CS    CC S         1
SBARC SBAR COMMA   1
SBAR  COMP S       3
SBAR  COMP VP      1
RELC  COMMA SBAR   1
NP    DT NOM       5
NP    POSS NOM     2
NP    NOM          2
NP    PRON         2
NP    NP PP        2
NP    NP SBAR      1
NP    NP RELC      0.5
NP    NP CNP       0.5
NP    NUMP NOM     1
NP    NP S         0.2
CNP   CC NP        1
NUMP  NUM          1
NUMP  NUM NUMP     0.2
NOM   N            6
NOM   ADJ NOM      2
NOM   N NOM        1
VP    V            2
VP    V NP         4
VP    VP PP        3
VP    VP ADVP      1
VP    ADVP VP      0.5
VP    V VP         1
VP    VP TOVP      1
VP    VP CVP       0.5
VP    VP SBAR      1
VP    V ADJP       0.5
VP    V S          0.3
VP    VP NP        0.3
CVP   CC VP        1
TOVP  TO VP        1
PP    P NP         3
PP    P VP         0.3
ADVP  ADV          3
ADVP  ADV ADVP     1
ADVP  ADV NP       0.3
ADVP  ADV PP       0.5
ADJP  ADJ          3
ADJP  ADVP ADJP    1
ADJP  ADJ PP       1
"""

WORDS = {
    "DT": "the a every each enough that",
    "POSS": "his her their its our",
    "PRON": "she he it nobody everyone more",
    "NUM": "two three hundred",
    "N": """mill river years morning baker shop sun hills children streets mothers
        doors library books room hall storm fishermen harbour boats stone walls wind
        evening letters brother city week committee bridge debate cost damage marshes
        farmers cattle market square monday month town teacher election train tree
        tracks tunnel museum repairs visitors paintings rooms windows lighting colours
        neighbours row apple trees fence spring captain charts route islands musicians
        church concert snow mountain road days village bread doctor patients workers
        roof school summer holidays classrooms report garden house vegetables family
        winter months""",
    "ADJ": """old narrow rarest locked reading sudden long new first quiet brighter
        larger softer safer heavy young small whole short last late early""",
    "V": """stood opened had risen played talked kept forced return filled rocked
        died wrote approved might cause brought expected win was delayed fallen
        reopened found been moved made look came planted studied choosing gathered
        practise closed ran walked visit could travel repaired painted finished
        produced feed""",
    "ADV": "finally down early late carefully quickly easily so almost again twice not",
    "P": """beside for than before over in at behind with against until to about
        after on of across near into along through during""",
    "COMP": "when while because that who which before until",
    "TO": "to",
    "CC": "and",
    "COMMA": ",",
    "DOT": ".",
}

UNKNOWN = "N NOM NP V VP ADJ ADJP ADV ADVP"
UNKNOWN_PROB = 1e-4


def main():
    rules = defaultdict(list)
    for line in PHRASES.strip().splitlines():
        lhs, *rhs, w = line.split()
        rules[lhs].append((tuple(rhs), float(w)))
    lexical = defaultdict(list)
    for tag, words in WORDS.items():
        ws = words.split()
        for w in ws:
            lexical[tag].append((w, 1.0 / len(ws)))

    # Normalise phrase rules; preterminals carry only lexical rules.
    probs = {}
    for lhs, rs in rules.items():
        total = sum(w for _, w in rs)
        probs[lhs] = [(rhs, w / total) for rhs, w in rs]

    def fold(sym, seen=()):
        """Binary and lexical rules reachable from sym through unary chains."""
        if sym in lexical:
            return [], [(w, p) for w, p in lexical[sym]]
        assert sym not in seen, f"unary cycle through {sym}"
        binary, lex = [], []
        for rhs, p in probs[sym]:
            if len(rhs) == 2:
                binary.append((rhs, p))
            else:
                b, l = fold(rhs[0], seen + (sym,))
                binary += [(r, p * q) for r, q in b]
                lex += [(w, p * q) for w, q in l]
        return binary, lex

    out = [
        "# Demo grammar for builtin:cyk, generated by make_demo_grammar.py.",
        f"%start {START}",
        f"%unknown {UNKNOWN} :{UNKNOWN_PROB:g}",
        "",
    ]
    for sym in list(probs) + list(lexical):
        binary, lex = fold(sym)
        merged = defaultdict(float)
        for rhs, p in binary:
            merged[("B",) + rhs] += p
        for w, p in lex:
            merged[("L", w)] += p
        for key, p in merged.items():
            if key[0] == "B":
                out.append(f"{sym} -> {key[1]} {key[2]} : {p:.17g}")
            else:
                out.append(f"{sym} -> '{key[1]}' : {p:.17g}")
        out.append("")
    with open("demo.pcfg", "w") as f:
        f.write("\n".join(out))

    heads = [
        "# Head child per nonterminal; unlisted symbols head leftmost.",
        "S rightmost",
        "NP rightmost",
        "NOM rightmost",
        "CS rightmost",
        "CNP rightmost",
        "CVP rightmost",
        "TOVP rightmost",
        "NUMP rightmost",
        "ADJP rightmost",
    ]
    with open("demo.heads", "w") as f:
        f.write("\n".join(heads) + "\n")


if __name__ == "__main__":
    main()
