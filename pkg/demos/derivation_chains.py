"""Walk the run-length derivation chain of a few digit words.

A word over {a, a-1} starting with a is parsed into runs of a separated
by single (a-1)'s; its run-length word is the derived word.  Words whose
chain never leaves the allowable class (equivalently: the chain hits a
cycle) correspond to the symmetric betas.
"""

from betabaker import EPWord, derivability_status, word


def show(w):
    outcome = derivability_status(w, max_steps=16)
    for i, step_word in enumerate(outcome.steps):  # D^0 is the word itself
        print(f"  D^{i}: {step_word}")
    print(f"  => {outcome.status.value} ({outcome.reason})\n")


def main():
    show(word((1, 0), (1, 0, 0)))       # beta_1: ends in the fixed point
    show(word((1, 1, 0), (1, 0)))       # the worked chain through (2;1)
    show(EPWord.parse("1,0,1,1;0"))     # fails allowability after one step
    show(EPWord.parse(";1"))            # infinite run: not derivable


if __name__ == "__main__":
    main()
