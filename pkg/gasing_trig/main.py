import sys

from gasing_trig.presenter.presenter import Presenter


def main():
    presenter = Presenter()
    sys.exit(presenter.run())


if __name__ == "__main__":
    main()
