from chromastate.cli.main import chromastate

if __name__ == "__main__":
    chromastate()
