"""Cuts a Lending Club export down to the columns of data/p2p/p2p.schema.

Keeps only finished loans (Fully Paid / Charged Off) and strips '%' from rates.
"""
import csv
import gzip
import sys

COLUMNS = [
    "loan_amnt", "term", "int_rate", "installment", "grade", "emp_length", "home_ownership",
    "annual_inc", "verification_status", "purpose", "dti", "delinq_2yrs", "inq_last_6mths",
    "open_acc", "pub_rec", "revol_util", "loan_status",
]


def main(path):
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", newline="") as f:
        reader = csv.DictReader(f)
        out = csv.writer(sys.stdout, lineterminator="\n")
        out.writerow(COLUMNS)
        for row in reader:
            if row.get("loan_status") not in ("Fully Paid", "Charged Off"):
                continue
            values = [row.get(c, "").strip().rstrip("%") for c in COLUMNS]
            out.writerow(["?" if v == "" else v for v in values])


if __name__ == "__main__":
    main(sys.argv[1])
