"""Expand a compact hand-annotated parse (pos;rel;word;head per line) to the tab format."""
import sys


def convert(text: str) -> str:
    out = []
    for block in text.strip().split("\n\n"):
        rows = [line.split(";") for line in block.strip().splitlines()]
        for i, (pos, rel, word, head) in enumerate(rows, start=1):
            h = int(head)
            head_col = "fin(E0)" if h == 0 else f"{rows[h - 1][2]}({h})"
            out.append(f"{i}\t{pos}\t{rel}\t{word}\t{head_col}")
        out.append("")
    return "\n".join(out)


if __name__ == "__main__":
    sys.stdout.write(convert(open(sys.argv[1]).read()))
