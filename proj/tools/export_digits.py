"""Export scikit-learn's 8x8 handwritten digits as a labeled CSV."""
import argparse
import csv

from sklearn.datasets import load_digits


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", help="destination CSV path")
    args = parser.parse_args()

    digits = load_digits()
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"px{i}" for i in range(digits.data.shape[1])] + ["label"])
        for row, label in zip(digits.data, digits.target):
            writer.writerow([int(v) for v in row] + [int(label)])


if __name__ == "__main__":
    main()
